#include "partsearch/strategies.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <utility>

namespace partsearch {

namespace {

// Independent sub-seeds per consumer of AgentConfig::rng_seed.  Stream 0 is
// the random initializer (see build_initial).
constexpr std::uint64_t kRandomWalkStream = 1;
constexpr std::uint64_t kRestartStream = 2;

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

}  // namespace

std::optional<NoCertificate> certificates_precheck(const Instance& inst) {
    inst.validate();
    const BigInt total = inst.total();
    if ((total & 1) == 1) {
        return NoCertificate{NoCertificate::Kind::OddTotal, total};
    }
    std::size_t k = 0;
    for (std::size_t j = 1; j < inst.size(); ++j) {
        if (inst.omega[j] > inst.omega[k]) k = j;
    }
    if (inst.omega[k] * 2 > total) {
        return NoCertificate{NoCertificate::Kind::DominantElement, BigInt(k)};
    }
    return std::nullopt;
}

// --- differencing ------------------------------------------------------------

namespace {

struct DiffNode {
    BigInt weight;
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    std::size_t min_index;
};

// Max-heap by weight; equal weights resolve to the node holding the lowest
// original index, keeping the construction deterministic.
struct DiffNodeLess {
    bool operator()(const DiffNode& a, const DiffNode& b) const {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.min_index > b.min_index;
    }
};

}  // namespace

PartitionVector differencing_seed(const Instance& inst) {
    inst.validate();
    const std::size_t n = inst.size();
    std::priority_queue<DiffNode, std::vector<DiffNode>, DiffNodeLess> heap;
    for (std::size_t j = 0; j < n; ++j) {
        heap.push(DiffNode{inst.omega[j], {j}, {}, j});
    }
    while (heap.size() > 1) {
        DiffNode a = heap.top();
        heap.pop();
        DiffNode b = heap.top();
        heap.pop();
        // Larger minus smaller: a's sides stay, b's flip.
        DiffNode merged;
        merged.weight = a.weight - b.weight;
        merged.pos = std::move(a.pos);
        merged.pos.insert(merged.pos.end(), b.neg.begin(), b.neg.end());
        merged.neg = std::move(a.neg);
        merged.neg.insert(merged.neg.end(), b.pos.begin(), b.pos.end());
        merged.min_index = std::min(a.min_index, b.min_index);
        heap.push(std::move(merged));
    }
    PartitionVector p(n);
    for (std::size_t j : heap.top().pos) p.set(j, true);
    return p;
}

// --- exhaustive as a strategy ---------------------------------------------------

StrategyDecision ExhaustiveStrategy::next(const BigInt&, const PartitionVector& p,
                                          const Instance& inst) {
    if (!cursor_) {
        cursor_.emplace(p, pruned_);
        if (!(cursor_->current() == p)) {
            // Pruned traversal pins the last bit; the runner tried an
            // off-traversal vector, so route it onto the traversal first.
            return StrategyDecision::cont(cursor_->current());
        }
    }
    if (cursor_->advance()) {
        return StrategyDecision::cont(cursor_->current());
    }
    BigInt classes = 1;
    classes <<= (pruned_ ? inst.size() - 1 : inst.size());
    return StrategyDecision::claim_no(
        NoCertificate{NoCertificate::Kind::ExhaustedSpace, std::move(classes), pruned_});
}

// --- greedy flip ----------------------------------------------------------------

GreedyFlipStrategy::GreedyFlipStrategy(const Instance& inst, bool sideways)
    : sideways_(sideways),
      sideways_limit_(inst.size()),
      tabu_cap_(2 * inst.size()) {}

bool GreedyFlipStrategy::in_tabu(std::size_t j) const {
    return std::find(tabu_.begin(), tabu_.end(), j) != tabu_.end();
}

void GreedyFlipStrategy::push_tabu(std::size_t j) {
    tabu_.push_back(j);
    while (tabu_.size() > tabu_cap_) tabu_.pop_front();
}

StrategyDecision GreedyFlipStrategy::next(const BigInt& t, const PartitionVector& p,
                                          const Instance& inst) {
    const std::size_t n = inst.size();
    std::size_t best_j = n;
    BigInt best_abs;
    for (std::size_t j = 0; j < n; ++j) {
        BigInt a = abs_big(flip_delta(p, inst, j, t));
        if (best_j == n || a < best_abs) {
            best_j = j;
            best_abs = std::move(a);
        }
    }
    if (best_j < n && best_abs < abs_big(t)) {
        sideways_used_ = 0;
        push_tabu(best_j);
        return StrategyDecision::cont(p.flipped(best_j));
    }
    if (!sideways_) {
        return StrategyDecision::give_up("no strictly improving flip");
    }
    if (sideways_used_ >= sideways_limit_) {
        return StrategyDecision::give_up("sideways budget exhausted");
    }
    std::size_t side_j = n;
    BigInt side_abs;
    for (std::size_t j = 0; j < n; ++j) {
        if (in_tabu(j)) continue;
        BigInt a = abs_big(flip_delta(p, inst, j, t));
        if (side_j == n || a < side_abs) {
            side_j = j;
            side_abs = std::move(a);
        }
    }
    if (side_j == n) {
        return StrategyDecision::give_up("all flips tabu");
    }
    ++sideways_used_;
    push_tabu(side_j);
    return StrategyDecision::cont(p.flipped(side_j));
}

// --- adjust moves ----------------------------------------------------------------

namespace {

// (value, original index), ordered by value then index so equal values
// resolve to the lowest index.
using SideEntry = std::pair<BigInt, std::size_t>;

std::size_t first_occurrence(const std::vector<SideEntry>& side, std::size_t pos) {
    const BigInt& v = side[pos].first;
    auto it = std::lower_bound(side.begin(), side.end(), v,
                               [](const SideEntry& e, const BigInt& key) { return e.first < key; });
    return static_cast<std::size_t>(it - side.begin());
}

struct MoveCandidate {
    BigInt abs_after;
    std::vector<std::size_t> flips;
    bool valid = false;

    void offer(BigInt a, std::initializer_list<std::size_t> idx) {
        if (!valid || a < abs_after) {
            abs_after = std::move(a);
            flips.assign(idx);
            valid = true;
        }
    }
};

}  // namespace

StrategyDecision AdjustMovesStrategy::next(const BigInt& t, const PartitionVector& p,
                                           const Instance& inst) {
    const std::size_t n = inst.size();
    std::vector<SideEntry> side[2];
    for (std::size_t j = 0; j < n; ++j) {
        side[p.test(j) ? 1 : 0].emplace_back(inst.omega[j], j);
    }
    std::sort(side[0].begin(), side[0].end());
    std::sort(side[1].begin(), side[1].end());

    MoveCandidate best;

    // Single transfers.
    for (std::size_t j = 0; j < n; ++j) {
        best.offer(abs_big(flip_delta(p, inst, j, t)), {j});
    }

    // For element j, |t'| of any move that also shifts the opposite side by
    // a value sum s is |t - q_j*(2*w_j - 2*s)|, smallest when 2*s is nearest
    // target2 = 2*w_j - q_j*t.
    for (std::size_t j = 0; j < n; ++j) {
        const std::vector<SideEntry>& opp = side[p.test(j) ? 0 : 1];
        const BigInt after_j = flip_delta(p, inst, j, t);
        const BigInt target2 = (inst.omega[j] << 1) - BigInt(p.sign(j)) * t;

        // 1-for-1 swap: binary search for the nearest opposite value.
        if (!opp.empty()) {
            auto it = std::lower_bound(
                opp.begin(), opp.end(), target2,
                [](const SideEntry& e, const BigInt& key) { return (e.first << 1) < key; });
            const auto try_swap = [&](std::size_t pos) {
                const std::size_t k = opp[first_occurrence(opp, pos)].second;
                best.offer(abs_big(flip_delta(p, inst, k, after_j)), {j, k});
            };
            if (it != opp.begin()) try_swap(static_cast<std::size_t>(it - opp.begin()) - 1);
            if (it != opp.end()) try_swap(static_cast<std::size_t>(it - opp.begin()));
        }

        // 1-for-2 exchange: two-pointer scan for the pair sum nearest the
        // target.  Exact zero hits are always found.
        if (opp.size() >= 2) {
            std::size_t lo = 0;
            std::size_t hi = opp.size() - 1;
            while (lo < hi) {
                const BigInt pair2 = (opp[lo].first + opp[hi].first) << 1;
                BigInt after_pair = flip_delta(p, inst, opp[hi].second,
                                               flip_delta(p, inst, opp[lo].second, after_j));
                best.offer(abs_big(std::move(after_pair)), {j, opp[lo].second, opp[hi].second});
                if (pair2 < target2) {
                    ++lo;
                } else if (pair2 > target2) {
                    --hi;
                } else {
                    break;
                }
            }
        }
    }

    if (best.valid && best.abs_after < abs_big(t)) {
        PartitionVector next = p;
        for (std::size_t j : best.flips) next.flip(j);
        return StrategyDecision::cont(std::move(next));
    }
    return StrategyDecision::give_up("no strictly improving repertoire move");
}

// --- random walk -------------------------------------------------------------------

StrategyDecision RandomWalkStrategy::next(const BigInt&, const PartitionVector& p,
                                          const Instance& inst) {
    const std::size_t j = static_cast<std::size_t>(rng_.below(inst.size()));
    return StrategyDecision::cont(p.flipped(j));
}

// --- restart wrapper -----------------------------------------------------------------

RestartWrapper::RestartWrapper(InnerFactory make_inner, RestartSchedule schedule,
                               std::uint64_t seed)
    : make_inner_(std::move(make_inner)),
      inner_(make_inner_()),
      schedule_(schedule),
      rng_(seed) {}

StrategyDecision RestartWrapper::next(const BigInt& t, const PartitionVector& p,
                                      const Instance& inst) {
    StrategyDecision decision = inner_->next(t, p, inst);
    if (decision.kind != StrategyDecision::Kind::GiveUp ||
        restarts_used_ >= schedule_.max_restarts) {
        return decision;
    }
    ++restarts_used_;
    inner_ = make_inner_();
    const std::size_t n = inst.size();
    PartitionVector fresh(n);
    for (std::size_t j = 0; j < n; ++j) fresh.set(j, rng_.flip());
    if (fresh == p) fresh.flip(static_cast<std::size_t>(rng_.below(n)));
    return StrategyDecision::cont(std::move(fresh));
}

// --- registry ---------------------------------------------------------------------

namespace {

std::unique_ptr<Strategy> make_restarting(const AgentConfig& cfg, const Instance& inst,
                                          bool greedy) {
    const Instance* instance = &inst;
    const bool sideways = cfg.sideways;
    auto inner = [instance, sideways, greedy]() -> std::unique_ptr<Strategy> {
        if (greedy) return std::make_unique<GreedyFlipStrategy>(*instance, sideways);
        return std::make_unique<AdjustMovesStrategy>();
    };
    return std::make_unique<RestartWrapper>(std::move(inner),
                                            RestartSchedule{cfg.max_restarts},
                                            mix_seed(cfg.rng_seed, kRestartStream));
}

}  // namespace

const std::map<std::string, StrategyFactory>& strategy_registry() {
    static const std::map<std::string, StrategyFactory> registry = {
        {"exhaustive",
         [](const AgentConfig& cfg, const Instance&) -> std::unique_ptr<Strategy> {
             return std::make_unique<ExhaustiveStrategy>(cfg.pruned);
         }},
        {"greedy",
         [](const AgentConfig& cfg, const Instance& inst) -> std::unique_ptr<Strategy> {
             return std::make_unique<GreedyFlipStrategy>(inst, cfg.sideways);
         }},
        {"adjust",
         [](const AgentConfig&, const Instance&) -> std::unique_ptr<Strategy> {
             return std::make_unique<AdjustMovesStrategy>();
         }},
        {"random",
         [](const AgentConfig& cfg, const Instance&) -> std::unique_ptr<Strategy> {
             return std::make_unique<RandomWalkStrategy>(
                 mix_seed(cfg.rng_seed, kRandomWalkStream));
         }},
        {"greedy+restart",
         [](const AgentConfig& cfg, const Instance& inst) -> std::unique_ptr<Strategy> {
             return make_restarting(cfg, inst, true);
         }},
        {"adjust+restart",
         [](const AgentConfig& cfg, const Instance& inst) -> std::unique_ptr<Strategy> {
             return make_restarting(cfg, inst, false);
         }},
    };
    return registry;
}

std::vector<std::string> strategy_names() {
    std::vector<std::string> names;
    for (const auto& [name, factory] : strategy_registry()) names.push_back(name);
    return names;
}

bool is_known_strategy(const std::string& name) {
    return strategy_registry().count(name) != 0;
}

std::unique_ptr<Strategy> make_strategy(const std::string& name, const AgentConfig& cfg,
                                        const Instance& inst) {
    auto it = strategy_registry().find(name);
    if (it == strategy_registry().end()) {
        throw std::invalid_argument("unknown strategy '" + name + "'");
    }
    return it->second(cfg, inst);
}

RunOutcome run_agent(const Instance& inst, const AgentConfig& cfg) {
    auto strategy = make_strategy(cfg.strategy, cfg, inst);
    return run_agent(inst, cfg, *strategy);
}

}  // namespace partsearch
