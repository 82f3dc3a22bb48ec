#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "partsearch/core.hpp"
#include "partsearch/instances.hpp"

namespace partsearch {

// The three result kinds, with the failure exit split in two and Unverified
// for claims nothing can check cheaply.
enum class Verdict { DoneCorrect, DoneWrong, FailedGaveUp, FailedBudget, Unverified };

std::string_view to_string(Verdict verdict);

struct VerificationVerdict {
    Verdict kind;
    bool oracle_used = false;
};

// FoundPartition re-checks its witness.  A claim is accepted on a verifying
// certificate first; otherwise the known label or (within cap) the oracle
// decides correct vs wrong; beyond that it stays Unverified.
VerificationVerdict classify_outcome(const RunOutcome& outcome, const Instance& inst,
                                     std::size_t oracle_cap = kDefaultOracleCap);

// A reference exhaustive configuration: all-zeros start, binary counting
// order; only the pruning mode varies.
struct ReferenceConfig {
    bool pruned = false;
};

// Max trial count of the reference runner over the set; with several
// reference configurations, the smallest of the maxima.  Throws
// std::domain_error on an empty set or empty configuration list.
std::uint64_t unparticularized_resource(const InstanceSet& set,
                                        const std::vector<ReferenceConfig>& configs);
std::uint64_t unparticularized_resource(const InstanceSet& set,
                                        const ReferenceConfig& config = {});

// Finder cost plus execution cost; overflow-checked.
std::uint64_t combined_resource(std::uint64_t finder_trials, std::uint64_t exec_trials);

// Smallest k with 2^k >= z.
std::uint64_t ceil_log2(std::uint64_t z);

// Log2: threshold = c * ceil(log2 Z), the reading under which the bound is
// O(N) for Z = 2^(N-1).  Tenth: the literal one-order-of-magnitude Z / 10.
enum class ThresholdMode { Log2, Tenth };

std::string_view to_string(ThresholdMode mode);

struct InstanceRunRow {
    std::string strategy;
    std::string instance_id;
    std::size_t n = 0;
    OutcomeKind outcome;
    Verdict verdict;
    bool oracle_used = false;
    std::uint64_t trials = 0;
    std::uint64_t steps = 0;
    std::optional<bool> par;
    bool intelligent = false;  // counted into V
};

struct IntelligenceReport {
    std::vector<std::pair<std::string, std::string>> header;
    std::string agent;
    std::uint64_t sample_size = 0;
    std::uint64_t z_reference = 0;
    std::uint64_t threshold = 0;
    ThresholdMode mode = ThresholdMode::Log2;
    std::uint64_t threshold_factor = 0;
    std::uint64_t v_count = 0;
    std::vector<InstanceRunRow> rows;

    // q(A) = |V| / |W_sample|, exact as the pair (v_count, sample_size).
    double q() const {
        return sample_size == 0 ? 0.0
                                : static_cast<double>(v_count) / static_cast<double>(sample_size);
    }
};

struct QOptions {
    std::uint64_t threshold_factor = 4;
    ThresholdMode mode = ThresholdMode::Log2;
    std::optional<std::uint64_t> z_override;
    std::size_t oracle_cap = kDefaultOracleCap;
    // Default measures both reference modes and takes the smaller maximum.
    std::vector<ReferenceConfig> references{{false}, {true}};
};

// Runs the agent over the sample; an instance lands in V iff its run is
// DoneCorrect within the threshold.  Per-instance rng seeds derive from
// (cfg.rng_seed, row index).  Throws std::domain_error on an empty set or
// Z = 0.
IntelligenceReport intelligence_q(const AgentConfig& cfg, const InstanceSet& set,
                                  const QOptions& opts = {});

// --- corpus bench ------------------------------------------------------------

struct BenchOptions {
    std::size_t oracle_cap = kDefaultOracleCap;
    // Z is measured only when every instance fits under this length; larger
    // corpora report no Z rather than run for centuries.
    std::size_t z_cap = kDefaultOracleCap;
    ReferenceConfig reference{};  // unpruned reference by default
};

struct BenchSummary {
    std::string strategy;
    std::uint64_t done_correct = 0;
    std::uint64_t done_wrong = 0;
    std::uint64_t gave_up = 0;
    std::uint64_t budget_exhausted = 0;
    std::uint64_t unverified = 0;
    std::uint64_t total_trials = 0;
    std::uint64_t count = 0;

    double mean_trials() const {
        return count == 0 ? 0.0
                          : static_cast<double>(total_trials) / static_cast<double>(count);
    }
};

struct BenchReport {
    std::vector<std::pair<std::string, std::string>> header;
    std::optional<std::uint64_t> z;
    std::vector<InstanceRunRow> rows;
    std::vector<BenchSummary> summaries;
};

// Runs every named strategy over the corpus.  base_cfg supplies everything
// but the strategy name.
BenchReport run_bench(const InstanceSet& set, const std::vector<std::string>& strategies,
                      const AgentConfig& base_cfg, const BenchOptions& opts = {});

// --- conjecture sweep ----------------------------------------------------------

struct SweepCell {
    std::size_t n = 0;
    unsigned bits = 0;
    GeneratorParams::Kind kind = GeneratorParams::Kind::Planted;
    std::uint64_t count = 0;
};

struct SweepRow {
    std::size_t n = 0;
    unsigned bits = 0;
    std::string kind;
    std::uint64_t count = 0;
    std::uint64_t done_correct = 0;
    std::uint64_t done_wrong = 0;
    std::uint64_t gave_up = 0;
    std::uint64_t budget_exhausted = 0;
    std::uint64_t unverified = 0;
    std::uint64_t total_trials = 0;
    std::uint64_t v_count = 0;
    std::string note;  // "skipped-empty" for count-0 cells

    double mean_trials() const {
        return count == 0 ? 0.0
                          : static_cast<double>(total_trials) / static_cast<double>(count);
    }
    double q() const {
        return count == 0 ? 0.0
                          : static_cast<double>(v_count) / static_cast<double>(count);
    }
};

struct SweepTable {
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<SweepRow> rows;
};

// For each cell: generates `count` instances, runs the agent with budget =
// budget_factor * N, classifies every outcome, and tallies one row.  The
// intelligence column counts runs that are DoneCorrect within threshold =
// threshold_factor * (N - 1), i.e. against the analytic pruned reference
// Z = 2^(N-1).  Rows sort by (n, bits, kind); everything derives from
// `seed`, so repeated sweeps are byte-identical.  The sweep measures; it
// asserts nothing.
SweepTable conjecture_sweep(const std::vector<SweepCell>& cells, const AgentConfig& agent,
                            std::uint64_t budget_factor, std::uint64_t seed,
                            std::uint64_t threshold_factor = 4,
                            std::size_t oracle_cap = kDefaultOracleCap);

// --- report emission -----------------------------------------------------------

// CSV: '#' header lines, stable column order, LF endings.  JSON: fixed keys,
// alphabetically ordered, deterministic bytes.
std::string to_csv(const IntelligenceReport& report);
std::string to_json(const IntelligenceReport& report);
std::string to_csv(const BenchReport& report);
std::string to_json(const BenchReport& report);
std::string to_csv(const SweepTable& table);
std::string to_json(const SweepTable& table);

}  // namespace partsearch
