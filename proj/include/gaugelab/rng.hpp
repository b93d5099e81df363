#pragma once

// Seeded random source used by every generator in the project.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard, and all distributions are implemented here by hand (uniform via
// the top 53 bits, Gaussian via Box-Muller) so that a given seed produces
// the same stream on every platform and standard library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace gaugelab {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; two draws per sample, no caching, so
    // the stream position is a pure function of the call count.
    double gaussian() {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // Log-uniform on [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace gaugelab
