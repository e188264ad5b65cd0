#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace nmc {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for an independent stream: seed xor hash(stream index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return seed ^ splitmix64(stream);
}

/// Uniform integer in [0, bound). Rejection on the raw 64-bit output so results
/// do not depend on the standard library's distribution implementation.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace nmc
