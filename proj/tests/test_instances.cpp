#include <doctest.h>

#include <set>
#include <sstream>

#include "partsearch/core.hpp"
#include "partsearch/instances.hpp"

using namespace partsearch;

TEST_CASE("uniform generation is deterministic and in range") {
    GeneratorParams params;
    params.kind = GeneratorParams::Kind::Uniform;
    params.n = 9;
    params.bits = 10;
    params.count = 4;
    params.seed = 7;

    const InstanceSet a = gen_uniform(params);
    const InstanceSet b = gen_uniform(params);
    REQUIRE(a.size() == 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.instances[i].omega == b.instances[i].omega);
        CHECK(a.instances[i].id == b.instances[i].id);
        for (const BigInt& v : a.instances[i].omega) {
            CHECK(v >= 0);
            CHECK(v < 1024);
        }
    }

    std::set<std::string> ids;
    for (const Instance& inst : a.instances) ids.insert(inst.id);
    CHECK(ids.size() == a.size());

    params.bits = 1;
    for (const Instance& inst : gen_uniform(params).instances) {
        for (const BigInt& v : inst.omega) CHECK(v <= 1);
    }
}

TEST_CASE("uniform values average to the middle of the range") {
    GeneratorParams params;
    params.kind = GeneratorParams::Kind::Uniform;
    params.n = 100000;
    params.bits = 8;
    params.count = 1;
    params.seed = 3;
    const InstanceSet set = gen_uniform(params);
    BigInt sum = 0;
    for (const BigInt& v : set.instances[0].omega) sum += v;
    const double mean = sum.convert_to<double>() / 100000.0;
    CHECK(mean > 126.5);
    CHECK(mean < 128.5);
}

TEST_CASE("planted instances always partition") {
    GeneratorParams params;
    params.kind = GeneratorParams::Kind::Planted;
    params.n = 12;
    params.bits = 10;
    params.count = 100;
    params.seed = 11;
    const InstanceSet set = gen_planted(params);
    for (const Instance& inst : set.instances) {
        CHECK(inst.label == true);
        CHECK(oracle_par(inst).first);
    }

    // n = 2 degenerates to a twin pair.
    params.n = 2;
    params.count = 5;
    for (const Instance& inst : gen_planted(params).instances) {
        CHECK(inst.omega[0] == inst.omega[1]);
    }

    params.n = 1;
    CHECK_THROWS_AS(gen_planted(params), std::invalid_argument);
}

TEST_CASE("generator parameter validation") {
    GeneratorParams params;
    params.n = 0;
    params.bits = 8;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params.n = 4;
    params.bits = 0;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params.bits = 65;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
}

TEST_CASE("the worked example") {
    const Instance paper = paper_example();
    CHECK(paper.id == "paper-s2");
    CHECK(paper.size() == 9);
    CHECK(paper.total() == 2258);
    CHECK(paper.label == true);
    const auto [par, witness] = oracle_par(paper);
    CHECK(par);
    CHECK(signed_sum(*witness, paper) == 0);
}

TEST_CASE("instance file parsing") {
    std::istringstream in(
        "# corpus comment\n"
        "63 48 932 266 671 47 110 82 39\n"
        "\n"
        "1 2\n");
    const InstanceSet set = parse_instances(in, "w");
    REQUIRE(set.size() == 2);
    CHECK(set.instances[0].omega == paper_example().omega);
    CHECK(set.instances[0].id == "w-2");  // ids carry the source line
    CHECK(set.instances[1].id == "w-4");
}

TEST_CASE("parse errors carry the offending line") {
    std::istringstream bad("1 2\n3 x 4\n");
    CHECK_THROWS_WITH_AS(parse_instances(bad, "w"), doctest::Contains("line 2"), ParseError);

    std::istringstream negative("1 2\n3 -4\n");
    try {
        parse_instances(negative, "w");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("negative") != std::string::npos);
    }
}

TEST_CASE("canonical files round-trip byte for byte") {
    const std::string canonical = "63 48 932 266 671 47 110 82 39\n1 2\n0\n";
    std::istringstream in(canonical);
    const InstanceSet set = parse_instances(in, "w");
    std::ostringstream out;
    write_instances(set, out);
    CHECK(out.str() == canonical);

    // Non-canonical whitespace and comments normalize on the way through.
    std::istringstream messy("# note\n  1\t2 \n");
    std::ostringstream cleaned;
    write_instances(parse_instances(messy, "w"), cleaned);
    CHECK(cleaned.str() == "1 2\n");
}

TEST_CASE("write then read preserves the payload") {
    GeneratorParams params;
    params.kind = GeneratorParams::Kind::Uniform;
    params.n = 6;
    params.bits = 30;
    params.count = 8;
    params.seed = 19;
    const InstanceSet original = gen_uniform(params);
    std::ostringstream out;
    write_instances(original, out);
    std::istringstream in(out.str());
    const InstanceSet reread = parse_instances(in, "w");
    REQUIRE(reread.size() == original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
        CHECK(reread.instances[i].omega == original.instances[i].omega);
    }
}

TEST_CASE("values beyond 64 bits survive parsing and arithmetic") {
    std::istringstream in("123456789012345678901234567890 123456789012345678901234567890\n");
    const InstanceSet set = parse_instances(in, "big");
    REQUIRE(set.size() == 1);
    const Instance& inst = set.instances[0];
    CHECK(signed_sum(PartitionVector::from_string("10"), inst) == 0);
    CHECK(signed_sum(PartitionVector::from_string("11"), inst) ==
          BigInt("246913578024691357802469135780"));
}
