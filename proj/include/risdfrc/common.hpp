// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.

#pragma once

#include <complex>
#include <cstdint>
#include <numbers>

namespace risdfrc {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;

/// Closed rectangular angular region [theta_lo, theta_hi] x [phi_lo, phi_hi], radians.
struct AngleBox {
    double theta_lo = 0.0;
    double theta_hi = 0.0;
    double phi_lo = 0.0;
    double phi_hi = 0.0;

    bool contains(double theta, double phi) const {
        return theta >= theta_lo && theta <= theta_hi && phi >= phi_lo && phi <= phi_hi;
    }
    double theta_center() const { return 0.5 * (theta_lo + theta_hi); }
    double phi_center() const { return 0.5 * (phi_lo + phi_hi); }

    /// Sub-box with the same center and half the side length in each coordinate.
    AngleBox shrink_half() const {
        const double tq = 0.25 * (theta_hi - theta_lo);
        const double pq = 0.25 * (phi_hi - phi_lo);
        return {theta_center() - tq, theta_center() + tq, phi_center() - pq, phi_center() + pq};
    }
};

/// SplitMix64 generator. Cheap to seed, so one instance per Monte Carlo sample
/// gives schedule-independent substreams.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Key for the i-th substream of a base seed.
    static std::uint64_t substream_key(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 g(seed ^ (0xA0761D6478BD642FULL * (index + 1)));
        return g.next_u64();
    }

  private:
    std::uint64_t state_;
};

}  // namespace risdfrc
