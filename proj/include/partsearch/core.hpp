#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "partsearch/bigint.hpp"
#include "partsearch/certificate.hpp"
#include "partsearch/instance.hpp"
#include "partsearch/meter.hpp"

namespace partsearch {

inline constexpr std::size_t kDefaultOracleCap = 24;
inline constexpr std::uint64_t kDefaultBudgetFactor = 64;

// Feedback from one trial: the success bit and the signed discrepancy
// between the two side sums.
struct TrialFeedback {
    bool success;
    BigInt discrepancy;
};

enum class OutcomeKind {
    FoundPartition,
    ClaimedNoPartition,
    GaveUp,
    BudgetExhausted,
};

std::string_view to_string(OutcomeKind kind);

// Result of a runner: one of the four exits, the self-certifying witness
// when a partition was found, and the resources the run consumed.
struct RunOutcome {
    OutcomeKind kind;
    std::optional<PartitionVector> witness;    // FoundPartition only
    std::optional<NoCertificate> certificate;  // sound "no" claims
    std::string diagnostic;                    // GaveUp reason
    std::uint64_t trials = 0;
    std::uint64_t steps = 0;
    std::chrono::steady_clock::duration wall_time{};  // informational

    // Partition-function value when the run determined one.
    std::optional<bool> par() const {
        if (kind == OutcomeKind::FoundPartition) return true;
        if (kind == OutcomeKind::ClaimedNoPartition) return false;
        return std::nullopt;
    }
};

// How the initial partition vector is produced.
struct InitSpec {
    enum class Kind { AllZeros, AllOnes, Random, Differencing, FirstK, Explicit };

    Kind kind = Kind::AllZeros;
    std::uint32_t k = 0;              // FirstK
    PartitionVector explicit_bits;    // Explicit

    // Accepts "all-zeros", "all-ones", "random", "differencing", "first-<K>"
    // (K as digits or a small number word, e.g. "first-four"), or a raw
    // '0'/'1' bit string.  Throws std::invalid_argument otherwise.
    static InitSpec parse(std::string_view text);

    std::string describe() const;
};

struct AgentConfig {
    std::string strategy = "greedy";
    std::optional<std::uint64_t> budget;  // trials; default budget_factor * N
    std::uint64_t budget_factor = kDefaultBudgetFactor;
    InitSpec init;
    std::uint64_t rng_seed = 0;
    bool precheck = true;               // run the no-certificates before searching
    bool allow_unsound_claims = false;  // accept certificate-less "no" claims
    bool pruned = true;                 // exhaustive traversal skips complements
    bool sideways = true;               // greedy: bounded plateau moves
    std::uint32_t max_restarts = 1000;  // restart wrapper schedule

    std::uint64_t effective_budget(std::size_t n) const;
    std::string describe() const;
};

// Deterministic traversal of the search space in binary-counting order with
// bit 1 least significant, starting anywhere and wrapping around.  Pruned
// traversal pins the last bit to 0, visiting exactly one representative of
// each complement pair.
class EnumerationCursor {
public:
    EnumerationCursor(PartitionVector start, bool pruned);

    static EnumerationCursor from_zeros(std::size_t n, bool pruned) {
        return EnumerationCursor(PartitionVector(n), pruned);
    }

    const PartitionVector& current() const { return current_; }
    std::uint64_t visited() const { return visited_; }
    bool pruned() const { return pruned_; }

    // Advances to the successor, reporting each bit change to `on_flip(j,
    // now_set)`.  Returns false once the traversal has wrapped back to its
    // start, i.e. the space is exhausted.
    template <typename OnFlip>
    bool advance(OnFlip&& on_flip) {
        const std::size_t limit = pruned_ ? current_.size() - 1 : current_.size();
        std::size_t j = 0;
        while (j < limit && current_.test(j)) {
            current_.set(j, false);
            on_flip(j, false);
            ++j;
        }
        if (j < limit) {
            current_.set(j, true);
            on_flip(j, true);
        }
        if (current_ == start_) return false;
        ++visited_;
        return true;
    }

    bool advance() {
        return advance([](std::size_t, bool) {});
    }

private:
    PartitionVector start_;
    PartitionVector current_;
    std::uint64_t visited_ = 1;
    bool pruned_;
};

// --- trial function and helpers ---------------------------------------------

// The signed difference between side sums under p.  Exact at any magnitude.
// Throws std::invalid_argument on a length mismatch.
BigInt signed_sum(const PartitionVector& p, const Instance& inst);

// One trial evaluation; bumps meter.trials by exactly 1.
TrialFeedback trial(const PartitionVector& p, const Instance& inst, ResourceMeter& meter);

// Discrepancy after flipping bit j, given the current discrepancy t.
// Costs no trial.  Throws std::out_of_range on a bad index.
BigInt flip_delta(const PartitionVector& p, const Instance& inst, std::size_t j, const BigInt& t);

// --- strategy contract -------------------------------------------------------

struct StrategyDecision {
    enum class Kind { Continue, ClaimNoPartition, GiveUp };

    Kind kind;
    PartitionVector next;                      // Continue only
    std::optional<NoCertificate> certificate;  // ClaimNoPartition, sound mode
    std::string diagnostic;                    // GiveUp reason

    static StrategyDecision cont(PartitionVector p) {
        return {Kind::Continue, std::move(p), std::nullopt, {}};
    }
    static StrategyDecision claim_no(NoCertificate cert) {
        return {Kind::ClaimNoPartition, {}, std::move(cert), {}};
    }
    static StrategyDecision claim_no_unsound(std::string why) {
        return {Kind::ClaimNoPartition, {}, std::nullopt, std::move(why)};
    }
    static StrategyDecision give_up(std::string why) {
        return {Kind::GiveUp, {}, std::nullopt, std::move(why)};
    }
};

// A dynamic search: consumes the latest feedback and proposes the next
// vector or ends the run.  Instances own their state and are constructed
// fresh for every run.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual StrategyDecision next(const BigInt& t, const PartitionVector& p,
                                  const Instance& inst) = 0;
};

// --- runners -----------------------------------------------------------------

// The reference unparticularized computation: trials every vector in
// traversal order, stops at the first zero discrepancy, and after a full
// traversal its "no" answer is proven (ExhaustedSpace certificate).
RunOutcome run_exhaustive(const Instance& inst, EnumerationCursor cursor);
RunOutcome run_exhaustive(const Instance& inst, bool pruned = true);

// The trial-and-error loop around a dynamic search.  Exits: FoundPartition
// (always correct), ClaimedNoPartition, GaveUp, BudgetExhausted.  In sound
// mode a claim is accepted only with a verifying certificate; otherwise the
// run gives up instead.  Deterministic given (inst, cfg).
RunOutcome run_agent(const Instance& inst, const AgentConfig& cfg, Strategy& strategy);

// Brute-force decision of the partition function, independent of
// run_exhaustive (Gray-code mask walk, no shared traversal code).  Serves
// as the test oracle.  Throws std::domain_error above `cap`.
std::pair<bool, std::optional<PartitionVector>> oracle_par(
    const Instance& inst, std::size_t cap = kDefaultOracleCap);

// Materializes the initial vector for a run.
PartitionVector build_initial(const Instance& inst, const InitSpec& init,
                              std::uint64_t rng_seed);

}  // namespace partsearch
