#pragma once

#include <cstdint>

namespace randheap {

// SplitMix64 (Steele, Lea, Flood 2014). One generator step per coin flip,
// flip result is the low bit of the output word. The constants below are
// part of the on-disk reproducibility contract: identical seeds must give
// identical coin streams in every implementation of this trace format.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Fair coin: true = heads.
    bool flip() { return (next() & 1ULL) != 0; }

    // Uniform in [0, bound). Bound must be nonzero. Uses rejection sampling
    // so the draw is exactly uniform and platform independent.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 bits of mantissa.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace randheap
