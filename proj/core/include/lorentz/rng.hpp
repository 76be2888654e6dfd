#pragma once

#include <cstdint>
#include <random>

namespace lorentz {

// Deterministic RNG helpers. std::mt19937_64 output is pinned by the
// standard, but the std distributions are not; everything that must be
// reproducible across platforms and thread counts goes through these.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream for item `i` of a seeded run; safe to evaluate items in
// any order or on any thread.
inline std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t i) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(i + 0x51ed2701)));
}

inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

// Uniform integer in [0, bound); bound > 0. Rejection-free Lemire-style
// reduction would bias at 64 bits; plain rejection keeps it exact.
inline std::uint64_t uniform_index(std::mt19937_64& g, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = g();
    while (x >= limit) x = g();
    return x % bound;
}

inline std::int64_t uniform_int(std::mt19937_64& g, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_index(g, static_cast<std::uint64_t>(hi - lo + 1)));
}

} // namespace lorentz
