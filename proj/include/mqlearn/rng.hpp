#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mqlearn {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent child seeds from one
// run seed so that parallel/sequential execution order cannot alias streams.
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    return mix64(seed ^ mix64(stream));
}

inline uint64_t derive_seed(uint64_t seed, std::string_view tag) {
    return derive_seed(seed, fnv1a(tag));
}

inline Rng make_rng(uint64_t seed) { return Rng(mix64(seed)); }

inline Rng child_rng(uint64_t seed, uint64_t stream) { return Rng(derive_seed(seed, stream)); }

// Uniform double in [0,1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline int rand_bit(Rng& rng) { return static_cast<int>(rng() >> 63); }

// Uniform value in [0, 2^bits).
inline uint32_t rand_bits(Rng& rng, int bits) {
    return bits == 0 ? 0u : static_cast<uint32_t>(rng() >> (64 - bits));
}

inline int rand_sign(Rng& rng) { return rand_bit(rng) ? -1 : 1; }

}  // namespace mqlearn
