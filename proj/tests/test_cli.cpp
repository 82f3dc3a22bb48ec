#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#ifndef PARTSEARCH_CLI_PATH
#error "PARTSEARCH_CLI_PATH must point at the built binary"
#endif

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(PARTSEARCH_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << contents;
    return path;
}

}  // namespace

TEST_CASE("cli: solve reproduces the worked example") {
    const auto r = run_cli("solve --instance paper-s2 --strategy adjust --init first-four");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("outcome: FoundPartition") != std::string::npos);
    CHECK(r.out.find("par: 1") != std::string::npos);
    CHECK(r.out.find("witness: ") != std::string::npos);
}

TEST_CASE("cli: solve claims odd totals through the precheck") {
    const auto r = run_cli("solve --inline \"1 2\" --strategy greedy");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("outcome: ClaimedNoPartition") != std::string::npos);
    CHECK(r.out.find("certificate: odd-total") != std::string::npos);
}

TEST_CASE("cli: unknown strategy is a usage error") {
    CHECK(run_cli("solve --inline \"1 2 3\" --strategy nosuch").exit_code == 2);
    CHECK(run_cli("solve --inline \"1 2 3\" --badflag").exit_code == 2);
    CHECK(run_cli("solve").exit_code == 2);  // no source picked
}

TEST_CASE("cli: failed computations exit 1") {
    const auto r =
        run_cli("solve --inline \"6 6 6\" --strategy adjust --no-precheck --max-restarts 0");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("outcome: GaveUp") != std::string::npos);

    const auto budget = run_cli("solve --inline \"6 6 6\" --strategy random --budget 3");
    CHECK(budget.exit_code == 1);
    CHECK(budget.out.find("outcome: BudgetExhausted") != std::string::npos);
}

TEST_CASE("cli: exhaustive-direct runs the reference runner") {
    const auto r = run_cli("solve --inline \"1 2\" --strategy exhaustive-direct --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ClaimedNoPartition") != std::string::npos);
    CHECK(r.out.find("exhausted-space") != std::string::npos);
}

TEST_CASE("cli: json output is emitted when asked") {
    const auto r = run_cli("solve --instance paper-s2 --strategy greedy --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.front() == '{');
    CHECK(r.out.find("\"outcome\"") != std::string::npos);
}

TEST_CASE("cli: generate is deterministic and validates flags") {
    const auto a = run_cli("generate --n 9 --bits 10 --count 20 --seed 7");
    const auto b = run_cli("generate --n 9 --bits 10 --count 20 --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(run_cli("generate --n 0 --bits 10 --count 1 --seed 7").exit_code == 2);

    const auto planted = run_cli("generate --planted --n 6 --bits 8 --count 4 --seed 9");
    CHECK(planted.exit_code == 0);
    int lines = 0;
    for (char c : planted.out)
        if (c == '\n') ++lines;
    CHECK(lines == 4);
}

TEST_CASE("cli: bench runs a corpus end to end") {
    const auto corpus = temp_file("ps_cli_bench.txt", "1 2\n1 1\n");
    const std::string flags = "bench --file " + corpus.string() + " --strategies exhaustive";
    const auto a = run_cli(flags);
    const auto b = run_cli(flags);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("# z: 4") != std::string::npos);

    const auto empty = temp_file("ps_cli_empty.txt", "# nothing here\n");
    CHECK(run_cli("bench --file " + empty.string()).exit_code == 2);
    CHECK(run_cli("bench --file /nonexistent/path.txt").exit_code == 3);
}

TEST_CASE("cli: qmeasure reproduces the three-instance fixture") {
    const auto sample = temp_file("ps_cli_q.txt", "1 1\n1 2\n2 3 5\n");
    const auto r = run_cli("qmeasure --file " + sample.string() +
                           " --strategy exhaustive --unpruned --no-precheck --c 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("3,4,2,1,0.333333") != std::string::npos);
}

TEST_CASE("cli: sweep emits a deterministic table and tolerates empty cells") {
    const std::string flags =
        "sweep --n-list 4,6 --bits-list 2,N --count 4 --seed 11 --strategy greedy+restart";
    const auto a = run_cli(flags);
    const auto b = run_cli(flags);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("n,bits,kind,count") != std::string::npos);

    const auto empty = run_cli(
        "sweep --n-list 4 --bits-list 2 --count 0 --seed 11 --strategy greedy+restart");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out.find("skipped-empty") != std::string::npos);
}

TEST_CASE("cli: files with bad lines exit 3") {
    const auto bad = temp_file("ps_cli_bad.txt", "1 2\n3 -4\n");
    const auto r = run_cli("solve --file " + bad.string() + " --strategy greedy");
    CHECK(r.exit_code == 3);
}
