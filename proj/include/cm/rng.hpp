#pragma once

#include <cstdint>

namespace cm {

/// Portable seeded generator (splitmix64). Each agent receives independent
/// streams derived from (seed, agent index, domain), so an agent's random
/// draws do not depend on how often other agents draw.
struct SplitMix64 {
    std::uint64_t state = 0;

    SplitMix64() = default;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    /// Stream-split constructor: mixes seed, stream id and domain tag.
    SplitMix64(std::uint64_t seed, std::uint64_t stream, std::uint64_t domain) {
        state = seed;
        state = next_of(state ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
        state = next_of(state ^ (0xBF58476D1CE4E5B9ULL * (domain + 1)));
    }

    static std::uint64_t next_of(std::uint64_t s) {
        std::uint64_t z = (s + 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n).
    std::uint64_t bounded(std::uint64_t n) {
        return n <= 1 ? 0 : next() % n;
    }
};

}  // namespace cm
