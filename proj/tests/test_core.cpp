#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "partsearch/core.hpp"
#include "partsearch/instances.hpp"
#include "partsearch/rng.hpp"
#include "partsearch/strategies.hpp"

using namespace partsearch;

namespace {

Instance make(std::vector<long long> values, std::string id = "t") {
    Instance inst;
    inst.id = std::move(id);
    for (long long v : values) inst.omega.emplace_back(v);
    return inst;
}

Instance random_instance(SplitMix64& rng, std::size_t n, unsigned bits) {
    Instance inst;
    inst.id = "r";
    for (std::size_t j = 0; j < n; ++j) inst.omega.emplace_back(rng.low_bits(bits));
    return inst;
}

PartitionVector random_vector(SplitMix64& rng, std::size_t n) {
    PartitionVector p(n);
    for (std::size_t j = 0; j < n; ++j) p.set(j, rng.flip());
    return p;
}

}  // namespace

TEST_CASE("signed_sum on the worked example") {
    const Instance paper = paper_example();
    const auto witness = PartitionVector::from_string("111001001");
    CHECK(signed_sum(witness, paper) == 0);

    // All-ones equals the plain total.
    BigInt total = 0;
    for (const BigInt& w : paper.omega) total += w;
    CHECK(total == 2258);
    CHECK(signed_sum(PartitionVector(9, true), paper) == 2258);

    const Instance pair = make({1, 1});
    CHECK(signed_sum(PartitionVector::from_string("10"), pair) == 0);
}

TEST_CASE("signed_sum rejects dimension mismatch") {
    const Instance pair = make({1, 1});
    CHECK_THROWS_AS(signed_sum(PartitionVector(3), pair), std::invalid_argument);
}

TEST_CASE("trial meters and reports the discrepancy") {
    ResourceMeter meter;
    const Instance paper = paper_example();
    const auto fb = trial(PartitionVector::from_string("111001001"), paper, meter);
    CHECK(fb.success);
    CHECK(fb.discrepancy == 0);
    CHECK(meter.trials == 1);

    const auto fb2 = trial(PartitionVector(2, true), make({1, 2}), meter);
    CHECK_FALSE(fb2.success);
    CHECK(fb2.discrepancy == 3);
    CHECK(meter.trials == 2);

    const auto fb3 = trial(PartitionVector::from_string("110"), make({1, 2, 3}), meter);
    CHECK(fb3.success);
    CHECK(fb3.discrepancy == 0);
    CHECK(meter.trials == 3);
}

TEST_CASE("flip_delta matches a fresh evaluation") {
    const Instance paper = paper_example();
    const PartitionVector ones(9, true);
    // 2258 - 2*932
    CHECK(flip_delta(ones, paper, 2, BigInt(2258)) == 394);

    const Instance with_zero = make({5, 0, 7});
    const PartitionVector p = PartitionVector::from_string("101");
    const BigInt t = signed_sum(p, with_zero);
    CHECK(flip_delta(p, with_zero, 1, t) == t);

    const Instance pair = make({1, 1});
    CHECK(flip_delta(PartitionVector::from_string("10"), pair, 0, BigInt(0)) == -2);

    CHECK_THROWS_AS(flip_delta(ones, paper, 9, BigInt(0)), std::out_of_range);
}

TEST_CASE("enumeration cursor visits each pruned class exactly once") {
    const std::size_t n = 5;
    EnumerationCursor cursor = EnumerationCursor::from_zeros(n, true);
    std::set<std::string> seen;
    std::set<std::string> classes;
    do {
        const PartitionVector& p = cursor.current();
        CHECK_FALSE(p.test(n - 1));
        seen.insert(p.to_string());
        classes.insert(std::min(p.to_string(), p.complemented().to_string()));
    } while (cursor.advance());
    CHECK(seen.size() == 16);     // 2^(n-1)
    CHECK(classes.size() == 16);  // one representative per complement pair
    CHECK(cursor.visited() == 16);
}

TEST_CASE("enumeration cursor wraps from any start") {
    EnumerationCursor cursor(PartitionVector::from_string("101"), false);
    std::vector<std::string> order;
    do {
        order.push_back(cursor.current().to_string());
    } while (cursor.advance());
    // LSB-first counting from 5: 5,6,7,0,...,4
    const std::vector<std::string> expected = {"101", "011", "111", "000",
                                               "100", "010", "110", "001"};
    CHECK(order == expected);
}

TEST_CASE("run_exhaustive on tiny instances") {
    SUBCASE("finds the symmetric pair immediately") {
        const auto out = run_exhaustive(make({1, 1}), false);
        REQUIRE(out.kind == OutcomeKind::FoundPartition);
        CHECK(out.witness->to_string() == "10");
        CHECK(out.trials == 2);
    }
    SUBCASE("proves no-partition after the pruned traversal") {
        const auto out = run_exhaustive(make({1, 2}), true);
        REQUIRE(out.kind == OutcomeKind::ClaimedNoPartition);
        CHECK(out.trials == 2);
        REQUIRE(out.certificate.has_value());
        CHECK(out.certificate->kind == NoCertificate::Kind::ExhaustedSpace);
        CHECK(out.certificate->verify(make({1, 2})));
    }
    SUBCASE("solves the worked example") {
        const auto out = run_exhaustive(paper_example(), true);
        REQUIRE(out.kind == OutcomeKind::FoundPartition);
        CHECK(signed_sum(*out.witness, paper_example()) == 0);
    }
}

TEST_CASE("oracle_par decides tiny instances") {
    const auto yes = oracle_par(make({1, 2, 3}));
    CHECK(yes.first);
    REQUIRE(yes.second.has_value());
    CHECK(signed_sum(*yes.second, make({1, 2, 3})) == 0);

    const auto no = oracle_par(make({1, 2}));
    CHECK_FALSE(no.first);
    CHECK_FALSE(no.second.has_value());

    // A zero-sum singleton partitions with one empty side.
    const auto zero = oracle_par(make({0}));
    CHECK(zero.first);
    CHECK(signed_sum(*zero.second, make({0})) == 0);

    Instance too_big;
    too_big.id = "big";
    too_big.omega.assign(25, BigInt(1));
    CHECK_THROWS_AS(oracle_par(too_big, 24), std::domain_error);
}

TEST_CASE("oracle equivalence and exact trial counts") {
    SplitMix64 rng(20240811);
    for (int i = 0; i < 120; ++i) {
        const std::size_t n = 1 + rng.below(11);
        const unsigned bits = 1 + static_cast<unsigned>(rng.below(10));
        const Instance inst = random_instance(rng, n, bits);
        const bool truth = oracle_par(inst).first;

        const auto pruned = run_exhaustive(inst, true);
        const auto unpruned = run_exhaustive(inst, false);
        CHECK((pruned.kind == OutcomeKind::FoundPartition) == truth);
        CHECK((unpruned.kind == OutcomeKind::FoundPartition) == truth);
        if (!truth) {
            CHECK(pruned.trials == (1ULL << (n - 1)));
            CHECK(unpruned.trials == (1ULL << n));
        }
    }
}

TEST_CASE("algebraic properties of the trial function") {
    SplitMix64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 1 + rng.below(12);
        const unsigned bits = 1 + static_cast<unsigned>(rng.below(16));
        const Instance inst = random_instance(rng, n, bits);
        const PartitionVector p = random_vector(rng, n);
        const BigInt t = signed_sum(p, inst);

        // Antisymmetry under complement.
        CHECK(signed_sum(p.complemented(), inst) == -t);
        CHECK(p.complemented().complemented() == p);

        // Flip consistency.
        const std::size_t j = rng.below(n);
        CHECK(signed_sum(p.flipped(j), inst) == flip_delta(p, inst, j, t));

        // Permutation equivariance: rotate both by a random offset.
        const std::size_t shift = rng.below(n);
        Instance rotated = inst;
        std::rotate(rotated.omega.begin(), rotated.omega.begin() + shift, rotated.omega.end());
        std::vector<bool> bits_rotated(p.bits().begin(), p.bits().end());
        std::rotate(bits_rotated.begin(), bits_rotated.begin() + shift, bits_rotated.end());
        CHECK(signed_sum(PartitionVector(bits_rotated), rotated) == t);
    }
}

TEST_CASE("run_agent budget edge cases") {
    AgentConfig cfg;
    cfg.strategy = "greedy";
    cfg.budget = 0;
    const auto out = run_agent(make({1, 2}), cfg);
    CHECK(out.kind == OutcomeKind::BudgetExhausted);
    CHECK(out.trials == 0);

    // Budget caps trials exactly.
    AgentConfig walk;
    walk.strategy = "random";
    walk.budget = 17;
    walk.precheck = false;
    const auto capped = run_agent(make({1, 2, 4}), walk);
    CHECK(capped.kind == OutcomeKind::BudgetExhausted);
    CHECK(capped.trials == 17);
}

TEST_CASE("run_agent is deterministic bit for bit") {
    SplitMix64 rng(99);
    for (const char* name : {"greedy", "adjust", "random", "greedy+restart"}) {
        const Instance inst = random_instance(rng, 12, 10);
        AgentConfig cfg;
        cfg.strategy = name;
        cfg.rng_seed = 1234;
        cfg.init.kind = InitSpec::Kind::Random;
        const auto a = run_agent(inst, cfg);
        const auto b = run_agent(inst, cfg);
        CHECK(a.kind == b.kind);
        CHECK(a.trials == b.trials);
        CHECK(a.steps == b.steps);
        CHECK(a.witness == b.witness);
        CHECK(a.diagnostic == b.diagnostic);
    }
}

TEST_CASE("initializers") {
    const Instance paper = paper_example();
    SUBCASE("first-K plants the paper's starting split") {
        const InitSpec spec = InitSpec::parse("first-four");
        const PartitionVector p = build_initial(paper, spec, 0);
        CHECK(p.to_string() == "111100000");
        CHECK(signed_sum(p, paper) == 360);
        CHECK(InitSpec::parse("first-4").k == 4);
        CHECK_THROWS_AS(build_initial(make({1}), InitSpec::parse("first-4"), 0),
                        std::invalid_argument);
    }
    SUBCASE("named forms") {
        CHECK(build_initial(paper, InitSpec::parse("all-ones"), 0).to_string() == "111111111");
        CHECK(build_initial(paper, InitSpec::parse("all-zeros"), 0).to_string() == "000000000");
        CHECK(build_initial(paper, InitSpec::parse("101010101"), 0).to_string() == "101010101");
        // Random is seed-stable.
        CHECK(build_initial(paper, InitSpec::parse("random"), 5) ==
              build_initial(paper, InitSpec::parse("random"), 5));
        CHECK_THROWS_AS(InitSpec::parse("bogus"), std::invalid_argument);
    }
}

TEST_CASE("instance validation") {
    Instance empty;
    empty.id = "e";
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);

    Instance negative = make({3});
    negative.omega[0] = -1;
    CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
}
