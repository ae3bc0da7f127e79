// SPDX-License-Identifier: Apache-2.0
//
// Counter-based deterministic random stream (splitmix64 core). Trials are
// keyed by (seed, stream, substream) so serial and parallel sweeps draw
// identical values, independent of the standard library in use.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace stealth {

class SeedStream {
public:
    explicit SeedStream(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t substream = 0)
        : state_(absorb(absorb(absorb(0x853C49E6748FEA9BULL, seed), stream), substream)) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return finalize(state_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // Unbiased integer in [0, n), n >= 1.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = ~0ULL - ~0ULL % n;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % n;
    }

    // Circularly-symmetric complex Gaussian, E|z|^2 = 1 (Box-Muller).
    std::complex<double> next_cgauss() {
        double u = next_unit();
        if (u <= 0.0) u = 0x1.0p-53;
        const double r = std::sqrt(-std::log(u));
        const double phi = 2.0 * 3.14159265358979323846 * next_unit();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    static std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t absorb(std::uint64_t h, std::uint64_t w) {
        return finalize(h ^ (w + 0x9E3779B97F4A7C15ULL));
    }

    std::uint64_t state_;
};

}  // namespace stealth
