#pragma once

#include <chrono>
#include <cstdint>

namespace partsearch {

// Counts the canonical resource unit (trial evaluations) and, separately,
// strategy invocations.  Wall time is informational only; it never feeds
// the resource standard Z or the intelligence measure q.
struct ResourceMeter {
    std::uint64_t trials = 0;
    std::uint64_t steps = 0;
    std::chrono::steady_clock::duration wall_time{};

    void count_trial() { ++trials; }
    void count_step() { ++steps; }
};

}  // namespace partsearch
