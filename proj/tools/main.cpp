#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "partsearch/core.hpp"
#include "partsearch/instances.hpp"
#include "partsearch/metrics.hpp"
#include "partsearch/strategies.hpp"
#include "partsearch/version.hpp"

namespace {

using namespace partsearch;

// Exit codes: 0 success, 1 computation failed (GaveUp / BudgetExhausted),
// 2 usage error, 3 I/O or parse error.
constexpr int kExitOk = 0;
constexpr int kExitComputationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out << payload;
    if (!out) throw std::runtime_error("failed writing '" + out_path + "'");
}

struct SolveArgs {
    std::string named;
    std::string file;
    std::string inline_values;
    std::string strategy = "greedy";
    std::string init = "all-zeros";
    std::string format = "text";
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> budget;
    std::uint64_t budget_factor = kDefaultBudgetFactor;
    std::uint32_t max_restarts = 1000;
    bool unpruned = false;
    bool no_precheck = false;
    bool allow_unsound = false;
    bool no_sideways = false;
};

Instance resolve_instance(const SolveArgs& args) {
    const int sources = (!args.named.empty()) + (!args.file.empty()) + (!args.inline_values.empty());
    if (sources != 1) {
        throw std::invalid_argument("pick exactly one of --instance, --file, --inline");
    }
    if (!args.named.empty()) {
        if (args.named == "paper-s2") return paper_example();
        throw std::invalid_argument("unknown named instance '" + args.named +
                                    "' (available: paper-s2)");
    }
    if (!args.inline_values.empty()) {
        Instance inst;
        inst.id = "inline";
        inst.omega = parse_omega(args.inline_values);
        inst.validate();
        return inst;
    }
    InstanceSet set = read_instances(args.file);
    if (set.empty()) throw std::invalid_argument("'" + args.file + "' holds no instances");
    return set.instances.front();  // first instance; use bench for whole corpora
}

void print_solve_text(std::ostream& out, const RunOutcome& outcome, const Instance& inst) {
    out << "outcome: " << to_string(outcome.kind) << "\n";
    if (auto par = outcome.par()) out << "par: " << (*par ? 1 : 0) << "\n";
    if (outcome.witness) {
        out << "witness: " << outcome.witness->to_string() << "\n";
        std::string side1, side2;
        for (std::size_t j = 0; j < inst.size(); ++j) {
            std::string& side = outcome.witness->test(j) ? side1 : side2;
            if (!side.empty()) side += ' ';
            side += inst.omega[j].str();
        }
        out << "side1: " << side1 << "\n";
        out << "side2: " << side2 << "\n";
    }
    if (outcome.certificate) out << "certificate: " << outcome.certificate->describe() << "\n";
    if (!outcome.diagnostic.empty()) out << "diagnostic: " << outcome.diagnostic << "\n";
    out << "trials: " << outcome.trials << "\n";
    out << "steps: " << outcome.steps << "\n";
}

void print_solve_csv(std::ostream& out, const RunOutcome& outcome) {
    out << "outcome,par,witness,trials,steps,certificate,diagnostic\n";
    out << to_string(outcome.kind) << ',';
    if (auto par = outcome.par()) out << (*par ? 1 : 0);
    out << ',';
    if (outcome.witness) out << outcome.witness->to_string();
    out << ',' << outcome.trials << ',' << outcome.steps << ',';
    if (outcome.certificate) out << outcome.certificate->describe();
    out << ',' << outcome.diagnostic << "\n";
}

void print_solve_json(std::ostream& out, const RunOutcome& outcome, const Instance& inst) {
    nlohmann::json j{
        {"outcome", std::string(to_string(outcome.kind))},
        {"trials", outcome.trials},
        {"steps", outcome.steps},
        {"diagnostic", outcome.diagnostic},
    };
    if (auto par = outcome.par()) {
        j["par"] = *par;
    } else {
        j["par"] = nullptr;
    }
    if (outcome.witness) {
        j["witness"] = outcome.witness->to_string();
        nlohmann::json side1 = nlohmann::json::array();
        nlohmann::json side2 = nlohmann::json::array();
        for (std::size_t k = 0; k < inst.size(); ++k) {
            (outcome.witness->test(k) ? side1 : side2).push_back(inst.omega[k].str());
        }
        j["side1"] = std::move(side1);
        j["side2"] = std::move(side2);
    } else {
        j["witness"] = nullptr;
    }
    if (outcome.certificate) {
        j["certificate"] = outcome.certificate->describe();
    } else {
        j["certificate"] = nullptr;
    }
    out << j.dump(2) << "\n";
}

int cmd_solve(const SolveArgs& args) {
    if (args.strategy != "exhaustive-direct" && !is_known_strategy(args.strategy)) {
        std::cerr << "error: unknown strategy '" << args.strategy << "'\n";
        return kExitUsage;
    }
    const Instance inst = resolve_instance(args);

    AgentConfig cfg;
    cfg.strategy = args.strategy;
    cfg.init = InitSpec::parse(args.init);
    cfg.rng_seed = args.seed;
    cfg.budget = args.budget;
    cfg.budget_factor = args.budget_factor;
    cfg.precheck = !args.no_precheck;
    cfg.allow_unsound_claims = args.allow_unsound;
    cfg.pruned = !args.unpruned;
    cfg.sideways = !args.no_sideways;
    cfg.max_restarts = args.max_restarts;

    RunOutcome outcome;
    if (args.strategy == "exhaustive-direct") {
        EnumerationCursor cursor(build_initial(inst, cfg.init, cfg.rng_seed), cfg.pruned);
        outcome = run_exhaustive(inst, std::move(cursor));
    } else {
        outcome = run_agent(inst, cfg);
    }

    if (args.format == "text") {
        print_solve_text(std::cout, outcome, inst);
    } else if (args.format == "csv") {
        print_solve_csv(std::cout, outcome);
    } else if (args.format == "json") {
        print_solve_json(std::cout, outcome, inst);
    } else {
        std::cerr << "error: unknown format '" << args.format << "'\n";
        return kExitUsage;
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::microseconds>(outcome.wall_time).count();
    std::cerr << "wall_time_us: " << ms << "\n";

    const bool failed =
        outcome.kind == OutcomeKind::GaveUp || outcome.kind == OutcomeKind::BudgetExhausted;
    return failed ? kExitComputationFailed : kExitOk;
}

struct GenerateArgs {
    std::size_t n = 0;
    unsigned bits = 0;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    bool planted = false;
    std::string out;
};

int cmd_generate(const GenerateArgs& args) {
    GeneratorParams params;
    params.kind = args.planted ? GeneratorParams::Kind::Planted : GeneratorParams::Kind::Uniform;
    params.n = args.n;
    params.bits = args.bits;
    params.count = args.count;
    params.seed = args.seed;
    params.validate();
    const InstanceSet set = args.planted ? gen_planted(params) : gen_uniform(params);
    std::ostringstream payload;
    write_instances(set, payload);
    emit(payload.str(), args.out);
    return kExitOk;
}

struct BenchArgs {
    std::string file;
    std::string strategies;
    std::string format = "csv";
    std::string reference = "unpruned";
    std::string out;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> budget;
    std::uint64_t budget_factor = kDefaultBudgetFactor;
    std::size_t oracle_cap = kDefaultOracleCap;
    bool no_precheck = false;
    bool allow_unsound = false;
};

int cmd_bench(const BenchArgs& args) {
    std::vector<std::string> names =
        args.strategies.empty() ? strategy_names() : split_list(args.strategies);
    for (const std::string& name : names) {
        if (!is_known_strategy(name)) {
            std::cerr << "error: unknown strategy '" << name << "'\n";
            return kExitUsage;
        }
    }
    const InstanceSet set = read_instances(args.file);
    AgentConfig base;
    base.rng_seed = args.seed;
    base.budget = args.budget;
    base.budget_factor = args.budget_factor;
    base.precheck = !args.no_precheck;
    base.allow_unsound_claims = args.allow_unsound;
    BenchOptions opts;
    opts.oracle_cap = args.oracle_cap;
    opts.z_cap = args.oracle_cap;
    opts.reference.pruned = args.reference == "pruned";
    const BenchReport report = run_bench(set, names, base, opts);
    emit(args.format == "json" ? to_json(report) : to_csv(report), args.out);
    return kExitOk;
}

struct QMeasureArgs {
    std::string file;
    std::string strategy = "greedy";
    std::string format = "csv";
    std::string mode = "log2";
    std::string reference = "both";
    std::string init = "all-zeros";
    std::string out;
    std::uint64_t c = 4;
    std::optional<std::uint64_t> z;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> budget;
    std::uint64_t budget_factor = kDefaultBudgetFactor;
    std::size_t oracle_cap = kDefaultOracleCap;
    bool no_precheck = false;
    bool unpruned = false;
};

int cmd_qmeasure(const QMeasureArgs& args) {
    if (!is_known_strategy(args.strategy)) {
        std::cerr << "error: unknown strategy '" << args.strategy << "'\n";
        return kExitUsage;
    }
    const InstanceSet set = read_instances(args.file);
    AgentConfig cfg;
    cfg.strategy = args.strategy;
    cfg.init = InitSpec::parse(args.init);
    cfg.rng_seed = args.seed;
    cfg.budget = args.budget;
    cfg.budget_factor = args.budget_factor;
    cfg.precheck = !args.no_precheck;
    cfg.pruned = !args.unpruned;
    QOptions opts;
    opts.threshold_factor = args.c;
    opts.z_override = args.z;
    opts.oracle_cap = args.oracle_cap;
    if (args.mode == "tenth") {
        opts.mode = ThresholdMode::Tenth;
    } else if (args.mode != "log2") {
        std::cerr << "error: unknown threshold mode '" << args.mode << "'\n";
        return kExitUsage;
    }
    if (args.reference == "unpruned") {
        opts.references = {{false}};
    } else if (args.reference == "pruned") {
        opts.references = {{true}};
    } else if (args.reference != "both") {
        std::cerr << "error: unknown reference '" << args.reference << "'\n";
        return kExitUsage;
    }
    const IntelligenceReport report = intelligence_q(cfg, set, opts);
    emit(args.format == "json" ? to_json(report) : to_csv(report), args.out);
    return kExitOk;
}

struct SweepArgs {
    std::string n_list;
    std::string bits_list;
    std::string kind = "planted";
    std::string strategy = "greedy+restart";
    std::string format = "csv";
    std::string init = "all-zeros";
    std::string out;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget_factor = kDefaultBudgetFactor;
    std::uint64_t c = 4;
    std::size_t oracle_cap = kDefaultOracleCap;
    std::uint32_t max_restarts = 1000;
    bool no_precheck = false;
};

int cmd_sweep(const SweepArgs& args) {
    if (!is_known_strategy(args.strategy)) {
        std::cerr << "error: unknown strategy '" << args.strategy << "'\n";
        return kExitUsage;
    }
    GeneratorParams::Kind kind;
    if (args.kind == "planted") {
        kind = GeneratorParams::Kind::Planted;
    } else if (args.kind == "uniform") {
        kind = GeneratorParams::Kind::Uniform;
    } else {
        std::cerr << "error: unknown kind '" << args.kind << "'\n";
        return kExitUsage;
    }
    std::vector<SweepCell> cells;
    for (const std::string& n_tok : split_list(args.n_list)) {
        const std::size_t n = std::stoull(n_tok);
        if (n < 1) throw std::invalid_argument("sweep needs n >= 1");
        for (const std::string& b_tok : split_list(args.bits_list)) {
            SweepCell cell;
            cell.n = n;
            // "N" pins the bit width to the cell's array length, the
            // hardest regime of the grid.
            cell.bits = (b_tok == "N") ? static_cast<unsigned>(n)
                                       : static_cast<unsigned>(std::stoul(b_tok));
            cell.kind = kind;
            cell.count = args.count;
            cells.push_back(cell);
        }
    }
    if (cells.empty()) {
        std::cerr << "error: sweep needs --n-list and --bits-list\n";
        return kExitUsage;
    }
    AgentConfig agent;
    agent.strategy = args.strategy;
    agent.init = InitSpec::parse(args.init);
    agent.precheck = !args.no_precheck;
    agent.max_restarts = args.max_restarts;
    const SweepTable table =
        conjecture_sweep(cells, agent, args.budget_factor, args.seed, args.c, args.oracle_cap);
    emit(args.format == "json" ? to_json(table) : to_csv(table), args.out);
    return kExitOk;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitComputationFailed;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partsearch: trial-and-error search lab for the number partition problem"};
    app.set_version_flag("--version", std::string("partsearch ") + kVersion);
    app.require_subcommand(1);

    SolveArgs solve;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one instance");
    solve_cmd->add_option("--instance", solve.named, "Named instance (paper-s2)");
    solve_cmd->add_option("--file", solve.file, "Instance file (first instance is solved)");
    solve_cmd->add_option("--inline", solve.inline_values, "Values inline, e.g. \"63 48 932\"");
    solve_cmd->add_option("--strategy", solve.strategy,
                          "Strategy name, or exhaustive-direct for the reference runner");
    solve_cmd->add_option("--init", solve.init,
                          "all-zeros | all-ones | random | differencing | first-K | bit string");
    solve_cmd->add_option("--seed", solve.seed, "RNG seed");
    solve_cmd->add_option("--budget", solve.budget, "Trial budget (default budget-factor * N)");
    solve_cmd->add_option("--budget-factor", solve.budget_factor, "Budget factor");
    solve_cmd->add_option("--max-restarts", solve.max_restarts, "Restart schedule bound");
    solve_cmd->add_flag("--unpruned", solve.unpruned, "Traverse all of P, not one per pair");
    solve_cmd->add_flag("--no-precheck", solve.no_precheck, "Skip the no-certificates");
    solve_cmd->add_flag("--allow-unsound", solve.allow_unsound,
                        "Accept certificate-less no-claims");
    solve_cmd->add_flag("--no-sideways", solve.no_sideways, "Greedy: strict descent only");
    solve_cmd->add_option("--format", solve.format, "text | csv | json");

    GenerateArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("generate", "Generate an instance corpus");
    gen_cmd->add_option("--n", gen.n, "Array length")->required();
    gen_cmd->add_option("--bits", gen.bits, "Value bit width")->required();
    gen_cmd->add_option("--count", gen.count, "Instance count")->required();
    gen_cmd->add_option("--seed", gen.seed, "Generator seed");
    gen_cmd->add_flag("--planted", gen.planted, "Plant a perfect partition");
    gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Run strategies over a corpus");
    bench_cmd->add_option("--file", bench.file, "Corpus path")->required();
    bench_cmd->add_option("--strategies", bench.strategies,
                          "Comma list (default: every registered strategy)");
    bench_cmd->add_option("--seed", bench.seed, "RNG seed");
    bench_cmd->add_option("--budget", bench.budget, "Trial budget");
    bench_cmd->add_option("--budget-factor", bench.budget_factor, "Budget factor");
    bench_cmd->add_option("--oracle-cap", bench.oracle_cap, "Verification size cap");
    bench_cmd->add_option("--reference", bench.reference, "Z reference: unpruned | pruned");
    bench_cmd->add_flag("--no-precheck", bench.no_precheck, "Skip the no-certificates");
    bench_cmd->add_flag("--allow-unsound", bench.allow_unsound,
                        "Accept certificate-less no-claims");
    bench_cmd->add_option("--format", bench.format, "csv | json");
    bench_cmd->add_option("--out", bench.out, "Output path (default stdout)");

    QMeasureArgs qm;
    CLI::App* qm_cmd = app.add_subcommand("qmeasure", "Intelligence measure over a sample");
    qm_cmd->add_option("--file", qm.file, "Sample path")->required();
    qm_cmd->add_option("--strategy", qm.strategy, "Agent strategy");
    qm_cmd->add_option("--init", qm.init, "Initializer");
    qm_cmd->add_option("--c", qm.c, "Threshold factor");
    qm_cmd->add_option("--threshold-mode", qm.mode, "log2 | tenth");
    qm_cmd->add_option("--z", qm.z, "Override the measured reference Z");
    qm_cmd->add_option("--reference", qm.reference, "both | unpruned | pruned");
    qm_cmd->add_option("--seed", qm.seed, "RNG seed");
    qm_cmd->add_option("--budget", qm.budget, "Trial budget");
    qm_cmd->add_option("--budget-factor", qm.budget_factor, "Budget factor");
    qm_cmd->add_option("--oracle-cap", qm.oracle_cap, "Verification size cap");
    qm_cmd->add_flag("--no-precheck", qm.no_precheck, "Skip the no-certificates");
    qm_cmd->add_flag("--unpruned", qm.unpruned, "Exhaustive agent traverses all of P");
    qm_cmd->add_option("--format", qm.format, "csv | json");
    qm_cmd->add_option("--out", qm.out, "Output path (default stdout)");

    SweepArgs sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Grid sweep of generated cells");
    sweep_cmd->add_option("--n-list", sweep.n_list, "Comma list of lengths")->required();
    sweep_cmd->add_option("--bits-list", sweep.bits_list, "Comma list of bit widths; N = length")
        ->required();
    sweep_cmd->add_option("--count", sweep.count, "Instances per cell")->required();
    sweep_cmd->add_option("--kind", sweep.kind, "planted | uniform");
    sweep_cmd->add_option("--strategy", sweep.strategy, "Agent strategy");
    sweep_cmd->add_option("--init", sweep.init, "Initializer");
    sweep_cmd->add_option("--seed", sweep.seed, "Sweep seed");
    sweep_cmd->add_option("--budget-factor", sweep.budget_factor, "Budget = factor * N");
    sweep_cmd->add_option("--c", sweep.c, "Intelligence threshold factor");
    sweep_cmd->add_option("--max-restarts", sweep.max_restarts, "Restart schedule bound");
    sweep_cmd->add_option("--oracle-cap", sweep.oracle_cap, "Verification size cap");
    sweep_cmd->add_flag("--no-precheck", sweep.no_precheck, "Skip the no-certificates");
    sweep_cmd->add_option("--format", sweep.format, "csv | json");
    sweep_cmd->add_option("--out", sweep.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (solve_cmd->parsed()) return guarded([&] { return cmd_solve(solve); });
    if (gen_cmd->parsed()) return guarded([&] { return cmd_generate(gen); });
    if (bench_cmd->parsed()) return guarded([&] { return cmd_bench(bench); });
    if (qm_cmd->parsed()) return guarded([&] { return cmd_qmeasure(qm); });
    if (sweep_cmd->parsed()) return guarded([&] { return cmd_sweep(sweep); });
    return kExitUsage;
}
