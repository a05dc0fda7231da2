#pragma once

#include <cstdint>

#include "morrey/geometry.hpp"

namespace morrey {

// splitmix64: tiny, fast, reproducible across platforms.  Used instead of
// <random> engines/distributions so that streams are bit-identical everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Deterministic per-task seed derivation: hash-combines the base seed with
// task coordinates so parallel and serial sweeps agree bit-for-bit.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    SplitMix64 m(base ^ (a * 0x9E3779B97F4A7C15ull) ^ (b * 0xC2B2AE3D27D4EB4Full));
    m.next_u64();
    return m.next_u64();
}

// Uniform direction on S^{n-1}.
inline Vec random_direction(int n, SplitMix64& rng) {
    if (n == 1) {
        return Vec::e1(1, rng.uniform() < 0.5 ? -1.0 : 1.0);
    }
    if (n == 2) {
        const double th = 2.0 * std::numbers::pi * rng.uniform();
        return Vec{std::cos(th), std::sin(th)};
    }
    const double c = 1.0 - 2.0 * rng.uniform();
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double ph = 2.0 * std::numbers::pi * rng.uniform();
    return Vec{s * std::cos(ph), s * std::sin(ph), c};
}

} // namespace morrey
