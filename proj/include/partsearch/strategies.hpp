#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "partsearch/core.hpp"
#include "partsearch/rng.hpp"

namespace partsearch {

// O(N) sound "no" checks: odd total and dominant element.  Composed in
// front of the search loop; costs no trials.
std::optional<NoCertificate> certificates_precheck(const Instance& inst);

// Largest-first differencing with sign back-propagation.  Produces a full
// assignment whose discrepancy equals the differencing residue; a strong
// initial vector to compare searches against.
PartitionVector differencing_seed(const Instance& inst);

// Walks the enumeration successor order; claims ExhaustedSpace once the
// traversal wraps.  Wrapping the agent loop around this strategy reproduces
// run_exhaustive outcome for outcome.
class ExhaustiveStrategy final : public Strategy {
public:
    explicit ExhaustiveStrategy(bool pruned) : pruned_(pruned) {}
    StrategyDecision next(const BigInt& t, const PartitionVector& p,
                          const Instance& inst) override;

private:
    bool pruned_;
    std::optional<EnumerationCursor> cursor_;
};

// Best single-bit flip by |t'|, lowest index on ties.  Strictly descends;
// when only equal-or-worse flips remain it takes up to `sideways_limit`
// consecutive plateau moves guarded by a tabu list, then gives up.
class GreedyFlipStrategy final : public Strategy {
public:
    GreedyFlipStrategy(const Instance& inst, bool sideways);
    StrategyDecision next(const BigInt& t, const PartitionVector& p,
                          const Instance& inst) override;

private:
    bool in_tabu(std::size_t j) const;
    void push_tabu(std::size_t j);

    bool sideways_;
    std::size_t sideways_limit_;
    std::size_t sideways_used_ = 0;
    std::size_t tabu_cap_;
    std::deque<std::size_t> tabu_;
};

// Move repertoire modeled on adjusting a split by hand: single transfers,
// 1-for-1 swaps, and 1-for-2 exchanges across sides.  Picks the repertoire
// move minimizing |t'| and requires strict decrease; gives up otherwise.
// Candidates are costed through flip_delta composition, never trials.
class AdjustMovesStrategy final : public Strategy {
public:
    StrategyDecision next(const BigInt& t, const PartitionVector& p,
                          const Instance& inst) override;
};

// Uniform random single-bit flip.  Never claims, never gives up; only the
// budget stops it.
class RandomWalkStrategy final : public Strategy {
public:
    explicit RandomWalkStrategy(std::uint64_t seed) : rng_(seed) {}
    StrategyDecision next(const BigInt& t, const PartitionVector& p,
                          const Instance& inst) override;

private:
    SplitMix64 rng_;
};

struct RestartSchedule {
    std::uint32_t max_restarts = 1000;
};

// Turns an inner GiveUp into a restart from a fresh random vector with a
// fresh inner strategy, up to the schedule; afterwards the GiveUp passes
// through.  Sound claims pass through unchanged.
class RestartWrapper final : public Strategy {
public:
    using InnerFactory = std::function<std::unique_ptr<Strategy>()>;

    RestartWrapper(InnerFactory make_inner, RestartSchedule schedule, std::uint64_t seed);
    StrategyDecision next(const BigInt& t, const PartitionVector& p,
                          const Instance& inst) override;

    std::uint32_t restarts_used() const { return restarts_used_; }

private:
    InnerFactory make_inner_;
    std::unique_ptr<Strategy> inner_;
    RestartSchedule schedule_;
    std::uint32_t restarts_used_ = 0;
    SplitMix64 rng_;
};

// --- registry ----------------------------------------------------------------

using StrategyFactory =
    std::function<std::unique_ptr<Strategy>(const AgentConfig&, const Instance&)>;

// Stable names used by CLI flags and report columns: "exhaustive", "greedy",
// "adjust", "random", "greedy+restart", "adjust+restart".
const std::map<std::string, StrategyFactory>& strategy_registry();
std::vector<std::string> strategy_names();
bool is_known_strategy(const std::string& name);

// Builds a fresh, independently seeded strategy instance for one run.
// Throws std::invalid_argument on an unknown name.
std::unique_ptr<Strategy> make_strategy(const std::string& name, const AgentConfig& cfg,
                                        const Instance& inst);

// Convenience: looks up cfg.strategy in the registry and runs the agent loop.
RunOutcome run_agent(const Instance& inst, const AgentConfig& cfg);

}  // namespace partsearch
