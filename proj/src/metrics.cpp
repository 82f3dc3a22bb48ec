#include "partsearch/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "partsearch/rng.hpp"
#include "partsearch/strategies.hpp"
#include "partsearch/version.hpp"

namespace partsearch {

namespace {

constexpr std::uint64_t kSweepCellStream = 3;
constexpr std::uint64_t kSweepAgentStream = 4;
constexpr std::uint64_t kBatchRunStream = 5;

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string par_text(const std::optional<bool>& par) {
    if (!par) return "";
    return *par ? "1" : "0";
}

void append_header_lines(std::string& out,
                         const std::vector<std::pair<std::string, std::string>>& header) {
    for (const auto& [key, value] : header) {
        out += "# ";
        out += key;
        out += ": ";
        out += value;
        out += "\n";
    }
}

nlohmann::json header_json(const std::vector<std::pair<std::string, std::string>>& header) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& [key, value] : header) obj[key] = value;
    return obj;
}

nlohmann::json row_json(const InstanceRunRow& row) {
    nlohmann::json j{
        {"strategy", row.strategy},
        {"instance_id", row.instance_id},
        {"n", row.n},
        {"outcome", std::string(to_string(row.outcome))},
        {"verdict", std::string(to_string(row.verdict))},
        {"oracle_used", row.oracle_used},
        {"trials", row.trials},
        {"steps", row.steps},
        {"intelligent", row.intelligent},
    };
    if (row.par) {
        j["par"] = *row.par;
    } else {
        j["par"] = nullptr;
    }
    return j;
}

InstanceRunRow make_row(const std::string& strategy, const Instance& inst,
                        const RunOutcome& outcome, const VerificationVerdict& verdict) {
    InstanceRunRow row;
    row.strategy = strategy;
    row.instance_id = inst.id;
    row.n = inst.size();
    row.outcome = outcome.kind;
    row.verdict = verdict.kind;
    row.oracle_used = verdict.oracle_used;
    row.trials = outcome.trials;
    row.steps = outcome.steps;
    row.par = outcome.par();
    return row;
}

}  // namespace

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::DoneCorrect: return "DoneCorrect";
        case Verdict::DoneWrong: return "DoneWrong";
        case Verdict::FailedGaveUp: return "FailedGaveUp";
        case Verdict::FailedBudget: return "FailedBudget";
        case Verdict::Unverified: return "Unverified";
    }
    return "?";
}

std::string_view to_string(ThresholdMode mode) {
    return mode == ThresholdMode::Log2 ? "log2" : "tenth";
}

VerificationVerdict classify_outcome(const RunOutcome& outcome, const Instance& inst,
                                     std::size_t oracle_cap) {
    switch (outcome.kind) {
        case OutcomeKind::FoundPartition: {
            if (!outcome.witness || signed_sum(*outcome.witness, inst) != 0) {
                throw std::logic_error("FoundPartition outcome failed witness re-check");
            }
            return {Verdict::DoneCorrect, false};
        }
        case OutcomeKind::ClaimedNoPartition: {
            if (outcome.certificate && outcome.certificate->verify(inst)) {
                return {Verdict::DoneCorrect, false};
            }
            if (inst.label) {
                return {*inst.label ? Verdict::DoneWrong : Verdict::DoneCorrect, false};
            }
            if (inst.size() <= oracle_cap) {
                const bool truth = oracle_par(inst, oracle_cap).first;
                return {truth ? Verdict::DoneWrong : Verdict::DoneCorrect, true};
            }
            return {Verdict::Unverified, false};
        }
        case OutcomeKind::GaveUp: return {Verdict::FailedGaveUp, false};
        case OutcomeKind::BudgetExhausted: return {Verdict::FailedBudget, false};
    }
    throw std::logic_error("unreachable outcome kind");
}

std::uint64_t unparticularized_resource(const InstanceSet& set,
                                        const std::vector<ReferenceConfig>& configs) {
    if (set.empty()) throw std::domain_error("resource standard needs a nonempty instance set");
    if (configs.empty()) throw std::domain_error("resource standard needs a reference config");
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (const ReferenceConfig& config : configs) {
        std::uint64_t worst = 0;
        for (const Instance& inst : set.instances) {
            const RunOutcome run = run_exhaustive(inst, config.pruned);
            worst = std::max(worst, run.trials);
        }
        best = std::min(best, worst);
    }
    return best;
}

std::uint64_t unparticularized_resource(const InstanceSet& set, const ReferenceConfig& config) {
    return unparticularized_resource(set, std::vector<ReferenceConfig>{config});
}

std::uint64_t combined_resource(std::uint64_t finder_trials, std::uint64_t exec_trials) {
    if (finder_trials > std::numeric_limits<std::uint64_t>::max() - exec_trials) {
        throw std::overflow_error("combined resource count overflows");
    }
    return finder_trials + exec_trials;
}

std::uint64_t ceil_log2(std::uint64_t z) {
    if (z <= 1) return 0;
    return static_cast<std::uint64_t>(std::bit_width(z - 1));
}

// --- intelligence measure ------------------------------------------------------

IntelligenceReport intelligence_q(const AgentConfig& cfg, const InstanceSet& set,
                                  const QOptions& opts) {
    if (set.empty()) throw std::domain_error("q needs a nonempty instance sample");
    IntelligenceReport report;
    report.agent = cfg.describe();
    report.sample_size = set.size();
    report.mode = opts.mode;
    report.threshold_factor = opts.threshold_factor;
    report.z_reference =
        opts.z_override ? *opts.z_override : unparticularized_resource(set, opts.references);
    if (report.z_reference == 0) throw std::domain_error("reference resource Z must be positive");
    report.threshold = opts.mode == ThresholdMode::Log2
                           ? opts.threshold_factor * ceil_log2(report.z_reference)
                           : report.z_reference / 10;

    for (std::size_t i = 0; i < set.instances.size(); ++i) {
        const Instance& inst = set.instances[i];
        AgentConfig run_cfg = cfg;
        run_cfg.rng_seed = mix_seed(cfg.rng_seed, mix_seed(kBatchRunStream, i));
        const RunOutcome outcome = run_agent(inst, run_cfg);
        const VerificationVerdict verdict = classify_outcome(outcome, inst, opts.oracle_cap);
        InstanceRunRow row = make_row(cfg.strategy, inst, outcome, verdict);
        row.intelligent =
            verdict.kind == Verdict::DoneCorrect && outcome.trials <= report.threshold;
        if (row.intelligent) ++report.v_count;
        report.rows.push_back(std::move(row));
    }

    report.header = {
        {"artifact", std::string("partsearch ") + kVersion},
        {"report", "qmeasure"},
        {"agent", report.agent},
        {"sample_size", std::to_string(report.sample_size)},
        {"z_reference", std::to_string(report.z_reference)},
        {"threshold_mode", std::string(to_string(report.mode))},
        {"threshold_factor", std::to_string(report.threshold_factor)},
        {"threshold", std::to_string(report.threshold)},
        {"oracle_cap", std::to_string(opts.oracle_cap)},
    };
    return report;
}

// --- bench ----------------------------------------------------------------------

BenchReport run_bench(const InstanceSet& set, const std::vector<std::string>& strategies,
                      const AgentConfig& base_cfg, const BenchOptions& opts) {
    if (set.empty()) throw std::domain_error("bench needs a nonempty corpus");
    if (strategies.empty()) throw std::domain_error("bench needs at least one strategy");
    BenchReport report;

    const bool z_feasible = std::all_of(
        set.instances.begin(), set.instances.end(),
        [&](const Instance& inst) { return inst.size() <= opts.z_cap; });
    if (z_feasible) {
        report.z = unparticularized_resource(set, opts.reference);
    }

    for (const std::string& name : strategies) {
        BenchSummary summary;
        summary.strategy = name;
        for (std::size_t i = 0; i < set.instances.size(); ++i) {
            const Instance& inst = set.instances[i];
            AgentConfig cfg = base_cfg;
            cfg.strategy = name;
            cfg.rng_seed = mix_seed(base_cfg.rng_seed, mix_seed(kBatchRunStream, i));
            const RunOutcome outcome = run_agent(inst, cfg);
            const VerificationVerdict verdict = classify_outcome(outcome, inst, opts.oracle_cap);
            report.rows.push_back(make_row(name, inst, outcome, verdict));
            ++summary.count;
            summary.total_trials += outcome.trials;
            switch (verdict.kind) {
                case Verdict::DoneCorrect: ++summary.done_correct; break;
                case Verdict::DoneWrong: ++summary.done_wrong; break;
                case Verdict::FailedGaveUp: ++summary.gave_up; break;
                case Verdict::FailedBudget: ++summary.budget_exhausted; break;
                case Verdict::Unverified: ++summary.unverified; break;
            }
        }
        report.summaries.push_back(std::move(summary));
    }

    std::string names;
    for (const std::string& name : strategies) {
        if (!names.empty()) names += ",";
        names += name;
    }
    report.header = {
        {"artifact", std::string("partsearch ") + kVersion},
        {"report", "bench"},
        {"corpus", set.provenance},
        {"strategies", names},
        {"agent", base_cfg.describe()},
        {"reference", opts.reference.pruned ? "pruned" : "unpruned"},
        {"z", report.z ? std::to_string(*report.z) : "unmeasured"},
        {"oracle_cap", std::to_string(opts.oracle_cap)},
    };
    return report;
}

// --- conjecture sweep --------------------------------------------------------------

SweepTable conjecture_sweep(const std::vector<SweepCell>& cells, const AgentConfig& agent,
                            std::uint64_t budget_factor, std::uint64_t seed,
                            std::uint64_t threshold_factor, std::size_t oracle_cap) {
    std::vector<SweepCell> ordered = cells;
    std::sort(ordered.begin(), ordered.end(), [](const SweepCell& a, const SweepCell& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.bits != b.bits) return a.bits < b.bits;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });

    SweepTable table;
    for (const SweepCell& cell : ordered) {
        SweepRow row;
        row.n = cell.n;
        row.bits = cell.bits;
        row.kind = cell.kind == GeneratorParams::Kind::Planted ? "planted" : "uniform";
        row.count = cell.count;
        if (cell.count == 0) {
            row.note = "skipped-empty";
            table.rows.push_back(std::move(row));
            continue;
        }

        // Everything in the cell derives from (seed, n, bits, kind) so the
        // row is independent of the surrounding grid.
        std::uint64_t cell_seed = mix_seed(seed, kSweepCellStream);
        cell_seed = mix_seed(cell_seed, cell.n);
        cell_seed = mix_seed(cell_seed, cell.bits);
        cell_seed = mix_seed(cell_seed, static_cast<std::uint64_t>(cell.kind));

        GeneratorParams params;
        params.kind = cell.kind;
        params.n = cell.n;
        params.bits = cell.bits;
        params.count = cell.count;
        params.seed = cell_seed;
        const InstanceSet set =
            cell.kind == GeneratorParams::Kind::Planted ? gen_planted(params) : gen_uniform(params);

        // Intelligence threshold against the analytic pruned reference
        // Z = 2^(N-1), i.e. threshold_factor * (N - 1) trials.
        const std::uint64_t threshold =
            threshold_factor * static_cast<std::uint64_t>(cell.n > 0 ? cell.n - 1 : 0);

        for (std::size_t i = 0; i < set.instances.size(); ++i) {
            const Instance& inst = set.instances[i];
            AgentConfig cfg = agent;
            cfg.budget = budget_factor * static_cast<std::uint64_t>(cell.n);
            cfg.rng_seed = mix_seed(mix_seed(cell_seed, kSweepAgentStream), i);
            const RunOutcome outcome = run_agent(inst, cfg);
            const VerificationVerdict verdict = classify_outcome(outcome, inst, oracle_cap);
            row.total_trials += outcome.trials;
            if (verdict.kind == Verdict::DoneCorrect && outcome.trials <= threshold) {
                ++row.v_count;
            }
            switch (verdict.kind) {
                case Verdict::DoneCorrect: ++row.done_correct; break;
                case Verdict::DoneWrong: ++row.done_wrong; break;
                case Verdict::FailedGaveUp: ++row.gave_up; break;
                case Verdict::FailedBudget: ++row.budget_exhausted; break;
                case Verdict::Unverified: ++row.unverified; break;
            }
        }
        table.rows.push_back(std::move(row));
    }

    table.header = {
        {"artifact", std::string("partsearch ") + kVersion},
        {"report", "sweep"},
        {"agent", agent.strategy + " init=" + agent.init.describe()},
        {"budget_factor", std::to_string(budget_factor)},
        {"seed", std::to_string(seed)},
        {"threshold_mode", "log2-analytic (Z = 2^(N-1))"},
        {"threshold_factor", std::to_string(threshold_factor)},
        {"oracle_cap", std::to_string(oracle_cap)},
    };
    return table;
}

// --- emission -----------------------------------------------------------------------

namespace {

constexpr const char* kRowColumns =
    "strategy,instance_id,n,outcome,verdict,oracle_used,trials,steps,par,intelligent";

void append_row_csv(std::string& out, const InstanceRunRow& row) {
    out += row.strategy;
    out += ',';
    out += row.instance_id;
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += to_string(row.outcome);
    out += ',';
    out += to_string(row.verdict);
    out += ',';
    out += row.oracle_used ? "1" : "0";
    out += ',';
    out += std::to_string(row.trials);
    out += ',';
    out += std::to_string(row.steps);
    out += ',';
    out += par_text(row.par);
    out += ',';
    out += row.intelligent ? "1" : "0";
    out += '\n';
}

}  // namespace

std::string to_csv(const IntelligenceReport& report) {
    std::string out;
    append_header_lines(out, report.header);
    out += kRowColumns;
    out += '\n';
    for (const InstanceRunRow& row : report.rows) append_row_csv(out, row);
    out += '\n';
    out += "sample_size,z_reference,threshold,v_count,q\n";
    out += std::to_string(report.sample_size) + "," + std::to_string(report.z_reference) + "," +
           std::to_string(report.threshold) + "," + std::to_string(report.v_count) + "," +
           format_fixed(report.q(), 6) + "\n";
    return out;
}

std::string to_json(const IntelligenceReport& report) {
    nlohmann::json j{
        {"header", header_json(report.header)},
        {"sample_size", report.sample_size},
        {"z_reference", report.z_reference},
        {"threshold", report.threshold},
        {"threshold_mode", std::string(to_string(report.mode))},
        {"threshold_factor", report.threshold_factor},
        {"v_count", report.v_count},
        {"q", report.q()},
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const InstanceRunRow& row : report.rows) rows.push_back(row_json(row));
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string to_csv(const BenchReport& report) {
    std::string out;
    append_header_lines(out, report.header);
    out += kRowColumns;
    out += '\n';
    for (const InstanceRunRow& row : report.rows) append_row_csv(out, row);
    out += '\n';
    out += "strategy,count,done_correct,done_wrong,gave_up,budget_exhausted,unverified,"
           "mean_trials,z\n";
    for (const BenchSummary& s : report.summaries) {
        out += s.strategy + "," + std::to_string(s.count) + "," + std::to_string(s.done_correct) +
               "," + std::to_string(s.done_wrong) + "," + std::to_string(s.gave_up) + "," +
               std::to_string(s.budget_exhausted) + "," + std::to_string(s.unverified) + "," +
               format_fixed(s.mean_trials(), 4) + "," +
               (report.z ? std::to_string(*report.z) : "") + "\n";
    }
    return out;
}

std::string to_json(const BenchReport& report) {
    nlohmann::json j{{"header", header_json(report.header)}};
    if (report.z) {
        j["z"] = *report.z;
    } else {
        j["z"] = nullptr;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const InstanceRunRow& row : report.rows) rows.push_back(row_json(row));
    j["rows"] = std::move(rows);
    nlohmann::json summaries = nlohmann::json::array();
    for (const BenchSummary& s : report.summaries) {
        summaries.push_back(nlohmann::json{
            {"strategy", s.strategy},
            {"count", s.count},
            {"done_correct", s.done_correct},
            {"done_wrong", s.done_wrong},
            {"gave_up", s.gave_up},
            {"budget_exhausted", s.budget_exhausted},
            {"unverified", s.unverified},
            {"mean_trials", s.mean_trials()},
        });
    }
    j["summaries"] = std::move(summaries);
    return j.dump(2) + "\n";
}

std::string to_csv(const SweepTable& table) {
    std::string out;
    append_header_lines(out, table.header);
    out += "n,bits,kind,count,done_correct,done_wrong,gave_up,budget_exhausted,unverified,"
           "mean_trials,q,note\n";
    for (const SweepRow& row : table.rows) {
        out += std::to_string(row.n) + "," + std::to_string(row.bits) + "," + row.kind + "," +
               std::to_string(row.count) + "," + std::to_string(row.done_correct) + "," +
               std::to_string(row.done_wrong) + "," + std::to_string(row.gave_up) + "," +
               std::to_string(row.budget_exhausted) + "," + std::to_string(row.unverified) + "," +
               format_fixed(row.mean_trials(), 4) + "," + format_fixed(row.q(), 6) + "," +
               row.note + "\n";
    }
    return out;
}

std::string to_json(const SweepTable& table) {
    nlohmann::json j{{"header", header_json(table.header)}};
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& row : table.rows) {
        rows.push_back(nlohmann::json{
            {"n", row.n},
            {"bits", row.bits},
            {"kind", row.kind},
            {"count", row.count},
            {"done_correct", row.done_correct},
            {"done_wrong", row.done_wrong},
            {"gave_up", row.gave_up},
            {"budget_exhausted", row.budget_exhausted},
            {"unverified", row.unverified},
            {"mean_trials", row.mean_trials()},
            {"q", row.q()},
            {"note", row.note},
        });
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

}  // namespace partsearch
