#ifndef TELEQEC_RNG_H
#define TELEQEC_RNG_H

#include <cstdint>
#include <random>

namespace teleqec {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
inline uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for an independent stream that depends only on (seed, index).
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    return mix64(mix64(seed) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

/// Uniform double in [0, 1) with 53 random bits. Unlike the standard
/// distributions this is bit-for-bit stable across standard libraries.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng &rng, double p) {
    return uniform01(rng) < p;
}

}  // namespace teleqec

#endif
