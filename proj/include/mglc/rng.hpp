#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mglc {

// Deterministic 64-bit generator (xoshiro-style splitmix core). All randomness
// in the project flows from one root seed through named substreams so that
// sampling, initialization and label dropout stay independent of each other.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // Avoid the all-zero fixed point and decorrelate small seeds.
        next_u64();
        next_u64();
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1). 53-bit mantissa, identical on every platform.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, n). Rejection-free modulo bias is irrelevant at
    // desk scale but cheap to avoid.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    bool bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t state_;
};

inline std::uint64_t hash_name(std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Named substream: derive an independent generator from a root seed.
inline Rng substream(std::uint64_t root_seed, std::string_view name) {
    return Rng(root_seed ^ hash_name(name));
}

} // namespace mglc
