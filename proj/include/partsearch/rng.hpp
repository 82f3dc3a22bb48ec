#pragma once

#include <bit>
#include <cstdint>

namespace partsearch {

// SplitMix64 (Vigna's public-domain mixer).  Chosen as the project-wide
// generator because the algorithm is fully specified here: seeded runs
// reproduce bit-for-bit on any platform and standard library.  Uniform
// ranges are drawn by masked rejection, never through std distributions
// (whose output the standard leaves unspecified).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); bound must be >= 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t mask = ~0ULL >> std::countl_zero(bound - 1);
        std::uint64_t v = next() & mask;
        while (v >= bound) v = next() & mask;
        return v;
    }

    // Uniform over the low `bits` bits, bits in [1, 64].
    std::uint64_t low_bits(unsigned bits) {
        const std::uint64_t word = next();
        return bits >= 64 ? word : word & ((1ULL << bits) - 1);
    }

    bool flip() { return (next() & 1) != 0; }

private:
    std::uint64_t state_;
};

// Derives an independent stream seed from (seed, index).  Used for
// per-instance and per-run seeding so parallel and serial batch execution
// produce identical outputs.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL + index * 0x9e3779b97f4a7c15ULL));
    return g.next();
}

}  // namespace partsearch
