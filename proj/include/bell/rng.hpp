#pragma once

#include <cstdint>

namespace bell {

// Identifier embedded in volume-run metadata so results are reproducible
// across implementations of the same generator.
inline constexpr const char* kPrngId = "xoshiro256++/chunked-splitmix64";

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

struct Xoshiro256pp {
    std::uint64_t s[4];

    // Per-chunk state: splitmix64 finalizer applied to (seed, chunk) so any
    // worker assignment of chunks yields the same streams.
    Xoshiro256pp(std::uint64_t seed, std::uint64_t chunk) {
        SplitMix64 sm(seed + chunk * 0x6A09E667F3BCC909ULL);
        for (auto& w : s) w = sm.next();
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }
    // Uniform in [-1, 1).
    double next_symmetric() { return 2.0 * next_double() - 1.0; }
};

}  // namespace bell
