#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hdist::detail {

/// Deterministic uniform/Gaussian sampler over the standardized mt19937_64
/// bit stream (standard-library distributions are implementation-defined,
/// mt19937_64 output is not).
class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) : rng_(seed) {}

    double uniform01() { return (rng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::uint64_t bits() { return rng_(); }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace hdist::detail
