#include "partsearch/core.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <chrono>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "partsearch/strategies.hpp"

namespace partsearch {

namespace {

void check_dimensions(const PartitionVector& p, const Instance& inst) {
    if (p.size() != inst.size()) {
        throw std::invalid_argument("dimension mismatch: vector has " +
                                    std::to_string(p.size()) + " bits, instance '" + inst.id +
                                    "' has " + std::to_string(inst.size()) + " values");
    }
}

// Doubled values, the unit every single-bit flip moves the discrepancy by.
std::vector<BigInt> doubled(const Instance& inst) {
    std::vector<BigInt> twice;
    twice.reserve(inst.size());
    for (const BigInt& w : inst.omega) twice.push_back(w << 1);
    return twice;
}

}  // namespace

void Instance::validate() const {
    if (omega.empty()) {
        throw std::invalid_argument("instance '" + id + "' has no values (N >= 1 required)");
    }
    for (std::size_t j = 0; j < omega.size(); ++j) {
        if (omega[j] < 0) {
            throw std::invalid_argument("instance '" + id + "' has negative value at index " +
                                        std::to_string(j + 1));
        }
    }
}

PartitionVector PartitionVector::from_string(std::string_view text) {
    std::vector<bool> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("partition vector must be '0'/'1' characters, got '" +
                                        std::string(text) + "'");
        }
        bits.push_back(c == '1');
    }
    return PartitionVector(std::move(bits));
}

std::string_view to_string(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::FoundPartition: return "FoundPartition";
        case OutcomeKind::ClaimedNoPartition: return "ClaimedNoPartition";
        case OutcomeKind::GaveUp: return "GaveUp";
        case OutcomeKind::BudgetExhausted: return "BudgetExhausted";
    }
    return "?";
}

bool NoCertificate::verify(const Instance& inst) const {
    switch (kind) {
        case Kind::OddTotal: {
            const BigInt total = inst.total();
            return total == detail && (total & 1) == 1;
        }
        case Kind::DominantElement: {
            if (detail < 0 || detail >= inst.size()) return false;
            const std::size_t k = detail.convert_to<std::size_t>();
            return inst.omega[k] * 2 > inst.total();
        }
        case Kind::ExhaustedSpace: {
            BigInt classes = 1;
            classes <<= (pruned ? inst.size() - 1 : inst.size());
            return detail == classes;
        }
    }
    return false;
}

std::string NoCertificate::describe() const {
    switch (kind) {
        case Kind::OddTotal: return "odd-total total=" + detail.str();
        case Kind::DominantElement: return "dominant-element index=" + detail.str();
        case Kind::ExhaustedSpace:
            return std::string("exhausted-space visited=") + detail.str() +
                   (pruned ? " pruned" : " unpruned");
    }
    return "?";
}

// --- InitSpec ----------------------------------------------------------------

InitSpec InitSpec::parse(std::string_view text) {
    InitSpec spec;
    if (text == "all-zeros" || text == "zeros") {
        spec.kind = Kind::AllZeros;
        return spec;
    }
    if (text == "all-ones" || text == "ones") {
        spec.kind = Kind::AllOnes;
        return spec;
    }
    if (text == "random") {
        spec.kind = Kind::Random;
        return spec;
    }
    if (text == "differencing") {
        spec.kind = Kind::Differencing;
        return spec;
    }
    if (text.starts_with("first-")) {
        const std::string_view suffix = text.substr(6);
        static constexpr std::array<std::string_view, 16> words = {
            "one", "two", "three", "four", "five", "six", "seven", "eight",
            "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen"};
        spec.kind = Kind::FirstK;
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (suffix == words[i]) {
                spec.k = static_cast<std::uint32_t>(i + 1);
                return spec;
            }
        }
        if (!suffix.empty()) {
            std::uint64_t k = 0;
            bool digits = true;
            for (char c : suffix) {
                if (!std::isdigit(static_cast<unsigned char>(c))) {
                    digits = false;
                    break;
                }
                k = k * 10 + static_cast<std::uint64_t>(c - '0');
                if (k > 0xffffffffULL) throw std::invalid_argument("first-K count too large");
            }
            if (digits) {
                spec.k = static_cast<std::uint32_t>(k);
                return spec;
            }
        }
        throw std::invalid_argument("cannot parse initializer '" + std::string(text) + "'");
    }
    // A raw bit string is accepted as an explicit start vector.
    bool bitstring = !text.empty();
    for (char c : text) bitstring = bitstring && (c == '0' || c == '1');
    if (bitstring) {
        spec.kind = Kind::Explicit;
        spec.explicit_bits = PartitionVector::from_string(text);
        return spec;
    }
    throw std::invalid_argument(
        "unknown initializer '" + std::string(text) +
        "' (expected all-zeros, all-ones, random, differencing, first-K, or a bit string)");
}

std::string InitSpec::describe() const {
    switch (kind) {
        case Kind::AllZeros: return "all-zeros";
        case Kind::AllOnes: return "all-ones";
        case Kind::Random: return "random";
        case Kind::Differencing: return "differencing";
        case Kind::FirstK: return "first-" + std::to_string(k);
        case Kind::Explicit: return "explicit:" + explicit_bits.to_string();
    }
    return "?";
}

PartitionVector build_initial(const Instance& inst, const InitSpec& init,
                              std::uint64_t rng_seed) {
    const std::size_t n = inst.size();
    switch (init.kind) {
        case InitSpec::Kind::AllZeros: return PartitionVector(n, false);
        case InitSpec::Kind::AllOnes: return PartitionVector(n, true);
        case InitSpec::Kind::Random: {
            SplitMix64 rng(mix_seed(rng_seed, 0));
            PartitionVector p(n);
            for (std::size_t j = 0; j < n; ++j) p.set(j, rng.flip());
            return p;
        }
        case InitSpec::Kind::Differencing: return differencing_seed(inst);
        case InitSpec::Kind::FirstK: {
            if (init.k > n) {
                throw std::invalid_argument("first-" + std::to_string(init.k) +
                                            " exceeds instance length " + std::to_string(n));
            }
            PartitionVector p(n);
            for (std::size_t j = 0; j < init.k; ++j) p.set(j, true);
            return p;
        }
        case InitSpec::Kind::Explicit: {
            if (init.explicit_bits.size() != n) {
                throw std::invalid_argument("explicit initializer has " +
                                            std::to_string(init.explicit_bits.size()) +
                                            " bits, instance has " + std::to_string(n));
            }
            return init.explicit_bits;
        }
    }
    throw std::logic_error("unreachable initializer kind");
}

// --- AgentConfig ---------------------------------------------------------------

std::uint64_t AgentConfig::effective_budget(std::size_t n) const {
    if (budget) return *budget;
    return budget_factor * static_cast<std::uint64_t>(n);
}

std::string AgentConfig::describe() const {
    std::string s = strategy + " init=" + init.describe() + " seed=" + std::to_string(rng_seed);
    s += budget ? " budget=" + std::to_string(*budget)
                : " budget_factor=" + std::to_string(budget_factor);
    if (!precheck) s += " precheck=off";
    if (allow_unsound_claims) s += " unsound-claims=on";
    return s;
}

// --- EnumerationCursor ----------------------------------------------------------

EnumerationCursor::EnumerationCursor(PartitionVector start, bool pruned) : pruned_(pruned) {
    if (start.size() == 0) {
        throw std::invalid_argument("enumeration cursor needs at least one bit");
    }
    if (pruned_) start.set(start.size() - 1, false);
    start_ = start;
    current_ = std::move(start);
}

// --- trial function --------------------------------------------------------------

BigInt signed_sum(const PartitionVector& p, const Instance& inst) {
    check_dimensions(p, inst);
    BigInt t = 0;
    for (std::size_t j = 0; j < inst.size(); ++j) {
        if (p.test(j)) {
            t += inst.omega[j];
        } else {
            t -= inst.omega[j];
        }
    }
    return t;
}

TrialFeedback trial(const PartitionVector& p, const Instance& inst, ResourceMeter& meter) {
    BigInt t = signed_sum(p, inst);
    meter.count_trial();
    return TrialFeedback{t == 0, std::move(t)};
}

BigInt flip_delta(const PartitionVector& p, const Instance& inst, std::size_t j,
                  const BigInt& t) {
    if (j >= inst.size()) {
        throw std::out_of_range("flip index " + std::to_string(j) + " out of range for N=" +
                                std::to_string(inst.size()));
    }
    check_dimensions(p, inst);
    const BigInt move = inst.omega[j] << 1;
    return p.test(j) ? BigInt(t - move) : BigInt(t + move);
}

// --- runners ----------------------------------------------------------------------

RunOutcome run_exhaustive(const Instance& inst, EnumerationCursor cursor) {
    inst.validate();
    if (cursor.current().size() != inst.size()) {
        throw std::invalid_argument("cursor dimension does not match instance");
    }
    const auto started = std::chrono::steady_clock::now();
    ResourceMeter meter;
    const std::vector<BigInt> twice = doubled(inst);
    BigInt t = signed_sum(cursor.current(), inst);
    for (;;) {
        meter.count_trial();
        if (t == 0) {
            RunOutcome out{OutcomeKind::FoundPartition, cursor.current(), std::nullopt, {},
                           meter.trials, 0};
            out.wall_time = std::chrono::steady_clock::now() - started;
            return out;
        }
        const bool more = cursor.advance([&](std::size_t j, bool now_set) {
            if (now_set) {
                t += twice[j];
            } else {
                t -= twice[j];
            }
        });
        if (!more) break;
    }
    BigInt visited = 1;
    visited <<= (cursor.pruned() ? inst.size() - 1 : inst.size());
    NoCertificate cert{NoCertificate::Kind::ExhaustedSpace, visited, cursor.pruned()};
    RunOutcome out{OutcomeKind::ClaimedNoPartition, std::nullopt, std::move(cert), {},
                   meter.trials, 0};
    out.wall_time = std::chrono::steady_clock::now() - started;
    return out;
}

RunOutcome run_exhaustive(const Instance& inst, bool pruned) {
    return run_exhaustive(inst, EnumerationCursor::from_zeros(inst.size(), pruned));
}

RunOutcome run_agent(const Instance& inst, const AgentConfig& cfg, Strategy& strategy) {
    inst.validate();
    const auto started = std::chrono::steady_clock::now();
    const std::size_t n = inst.size();
    const std::uint64_t budget = cfg.effective_budget(n);
    ResourceMeter meter;

    auto finish = [&](RunOutcome out) {
        out.trials = meter.trials;
        out.steps = meter.steps;
        out.wall_time = std::chrono::steady_clock::now() - started;
        return out;
    };

    if (budget == 0) {
        return finish({OutcomeKind::BudgetExhausted, std::nullopt, std::nullopt, {}});
    }
    if (cfg.precheck) {
        if (auto cert = certificates_precheck(inst)) {
            return finish(
                {OutcomeKind::ClaimedNoPartition, std::nullopt, std::move(cert), {}});
        }
    }

    PartitionVector p = build_initial(inst, cfg.init, cfg.rng_seed);
    while (meter.trials < budget) {
        const TrialFeedback fb = trial(p, inst, meter);
        if (fb.success) {
            return finish({OutcomeKind::FoundPartition, std::move(p), std::nullopt, {}});
        }
        StrategyDecision decision;
        try {
            decision = strategy.next(fb.discrepancy, p, inst);
        } catch (const std::exception& e) {
            return finish({OutcomeKind::GaveUp, std::nullopt, std::nullopt,
                           std::string("strategy failure: ") + e.what()});
        }
        meter.count_step();
        switch (decision.kind) {
            case StrategyDecision::Kind::Continue:
                if (decision.next.size() != n) {
                    return finish({OutcomeKind::GaveUp, std::nullopt, std::nullopt,
                                   "strategy returned a wrong-length vector"});
                }
                p = std::move(decision.next);
                break;
            case StrategyDecision::Kind::ClaimNoPartition:
                if (decision.certificate && decision.certificate->verify(inst)) {
                    return finish({OutcomeKind::ClaimedNoPartition, std::nullopt,
                                   std::move(decision.certificate), {}});
                }
                if (cfg.allow_unsound_claims) {
                    return finish({OutcomeKind::ClaimedNoPartition, std::nullopt, std::nullopt,
                                   std::move(decision.diagnostic)});
                }
                return finish({OutcomeKind::GaveUp, std::nullopt, std::nullopt,
                               "uncertified no-partition claim suppressed in sound mode"});
            case StrategyDecision::Kind::GiveUp:
                return finish({OutcomeKind::GaveUp, std::nullopt, std::nullopt,
                               std::move(decision.diagnostic)});
        }
    }
    return finish({OutcomeKind::BudgetExhausted, std::nullopt, std::nullopt, {}});
}

// --- oracle -----------------------------------------------------------------------

std::pair<bool, std::optional<PartitionVector>> oracle_par(const Instance& inst,
                                                           std::size_t cap) {
    inst.validate();
    const std::size_t n = inst.size();
    if (n > cap || n >= 64) {
        throw std::domain_error("oracle refuses N=" + std::to_string(n) + " (cap " +
                                std::to_string(cap) + ")");
    }
    // Gray-code walk over index masks: one side change per step, so the
    // running discrepancy updates in O(1).  Deliberately a different
    // traversal from EnumerationCursor's binary counting.
    BigInt t = -inst.total();
    if (t == 0) {
        return {true, PartitionVector(n, false)};
    }
    const std::vector<BigInt> twice = doubled(inst);
    const std::uint64_t masks = 1ULL << n;
    std::uint64_t gray = 0;
    for (std::uint64_t i = 1; i < masks; ++i) {
        const std::uint64_t next_gray = i ^ (i >> 1);
        const std::uint64_t changed = next_gray ^ gray;
        const auto j = static_cast<std::size_t>(std::countr_zero(changed));
        gray = next_gray;
        if (next_gray & changed) {
            t += twice[j];
        } else {
            t -= twice[j];
        }
        if (t == 0) {
            PartitionVector witness(n);
            for (std::size_t b = 0; b < n; ++b) witness.set(b, (gray >> b) & 1ULL);
            return {true, std::move(witness)};
        }
    }
    return {false, std::nullopt};
}

}  // namespace partsearch
