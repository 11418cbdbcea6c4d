#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace prowl {

using Rng = std::mt19937_64;

/// Stateless mixer for deriving independent sub-seeds from one master seed.
/// (splitmix64 finalizer; avalanches even for small consecutive inputs.)
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform integer in [0, n) by rejection sampling. We avoid
/// std::uniform_int_distribution because its output sequence is
/// implementation-defined; this keeps seeded runs reproducible.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t bound = n;
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool chance(Rng& rng, double p) {
    return uniform01(rng) < p;
}

template <typename T>
const T& uniform_pick(Rng& rng, const std::vector<T>& items) {
    return items[uniform_index(rng, items.size())];
}

}  // namespace prowl
