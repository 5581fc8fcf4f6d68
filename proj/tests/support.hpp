// SPDX-License-Identifier: Apache-2.0
//
// Shared test fixtures: independent oracles and small scenario builders.
// Everything here re-derives results from first principles (raw geometry and
// per-term sums) so the library's matrix/table paths are checked against a
// second route.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "risdfrc/common.hpp"
#include "risdfrc/desired.hpp"
#include "risdfrc/optimizer.hpp"
#include "risdfrc/response.hpp"
#include "risdfrc/scene.hpp"

namespace risdfrc::testing {

// Direct channel-sum evaluation of the far-field response: per-term product of
// steering phase, element pattern, RIS response, source-RIS gain, and the
// sampled source spectrum. Independent of q_matrix / SceneTables.
inline cplx direct_response(const DesignVariables& dv, double f, double theta, double phi,
                            const Scene& scene) {
    const double w = scene.signal.bandwidth;
    const double t_pulse = scene.signal.pulse_duration;
    const double f_rf = f + scene.signal.carrier;
    const int m = scene.num_elements();
    const int j = scene.num_sources();
    const int n = scene.num_samples();

    const Eigen::Vector3d u(std::cos(theta) * std::sin(phi), std::sin(theta),
                            std::cos(theta) * std::cos(phi));

    // Sampled spectra S_j(f) = (1/W) sum_n s_j(n/W) exp(-2*pi*i*n*f/W).
    std::vector<cplx> spectrum(j, cplx(0.0, 0.0));
    for (int q = 0; q < j; ++q) {
        for (int ns = 0; ns < n; ++ns) {
            spectrum[q] += dv.s[ns * j + q] *
                           std::polar(1.0, -2.0 * kPi * (ns + 1) * f / w) / w;
        }
    }

    cplx acc(0.0, 0.0);
    for (int i = 0; i < m; ++i) {
        const Eigen::Vector3d pe = scene.ris.element_position(i);
        const double tau = -pe.dot(u) / kSpeedOfLight;
        const cplx steer_conj = std::polar(1.0, -2.0 * kPi * f_rf * tau);
        const double cos_bore = u.z();
        const double gamma_i =
            cos_bore > 0.0 ? std::sqrt(scene.ris_pattern.peak_gain * cos_bore) : 0.0;
        for (int q = 0; q < j; ++q) {
            const Eigen::Vector3d ps = scene.sources.positions[q];
            const Eigen::Vector3d diff = pe - ps;
            const double dist = diff.norm();
            const Eigen::Vector3d dir = diff / dist;
            const double cos_src = scene.sources.boresights[q].dot(dir);
            const double amp_src =
                cos_src > 0.0 ? std::sqrt(scene.source_pattern.peak_gain * cos_src) : 0.0;
            const double cos_elem = dir.z();
            const double area =
                cos_elem > 0.0 ? (kSpeedOfLight / f_rf) * (kSpeedOfLight / f_rf) /
                                     (4.0 * kPi) * scene.ris_pattern.peak_gain * cos_elem
                               : 0.0;
            const cplx gain = std::polar(amp_src * std::sqrt(area) / std::sqrt(4.0 * kPi * dist * dist),
                                         -2.0 * kPi * f_rf * dist / kSpeedOfLight);
            acc += steer_conj * gamma_i * dv.x[i] * gain * spectrum[q];
        }
    }
    return acc / std::sqrt(t_pulse);
}

inline double direct_beampattern(const DesignVariables& dv, double f, double theta, double phi,
                                 const Scene& scene) {
    return std::abs(direct_response(dv, f, theta, phi, scene));
}

// Random tiny scene: M <= 3, J <= 2, N <= 4, randomized geometry and signal.
inline Scene tiny_random_scene(SplitMix64& rng) {
    Scene sc;
    sc.ris.rows = 1;
    sc.ris.cols = 1 + static_cast<int>(rng.next_u64() % 3);  // M in {1,2,3}
    sc.ris.spacing = 0.03 + 0.04 * rng.next_double();
    sc.signal.bandwidth = 5e7 + 1e8 * rng.next_double();
    const int n = 1 + static_cast<int>(rng.next_u64() % 4);  // N in {1..4}
    sc.signal.pulse_duration = (n + 0.5) / sc.signal.bandwidth;
    sc.signal.carrier = 2e9 + 2e9 * rng.next_double();
    const int j = 1 + static_cast<int>(rng.next_u64() % 2);  // J in {1,2}
    sc.sources.positions.clear();
    sc.sources.boresights.clear();
    for (int q = 0; q < j; ++q) {
        sc.sources.positions.push_back({0.3 * (rng.next_double() - 0.5),
                                        0.3 * (rng.next_double() - 0.5),
                                        -(0.3 + 0.5 * rng.next_double())});
        sc.sources.boresights.push_back({0.0, 0.0, 1.0});
    }
    sc.power = 1.0 + 9.0 * rng.next_double();
    return sc;
}

inline Eigen::VectorXcd random_unit_vector(int size, SplitMix64& rng) {
    Eigen::VectorXcd v(size);
    for (int i = 0; i < size; ++i) v[i] = std::polar(1.0, 2.0 * kPi * rng.next_double());
    return v;
}

inline Eigen::VectorXcd random_complex_vector(int size, SplitMix64& rng) {
    Eigen::VectorXcd v(size);
    for (int i = 0; i < size; ++i) {
        v[i] = cplx(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
    }
    return v;
}

inline DesignVariables random_design(const Scene& sc, SplitMix64& rng) {
    DesignVariables dv;
    dv.x = random_unit_vector(sc.num_elements(), rng);
    dv.s = random_complex_vector(sc.num_sources() * sc.num_samples(), rng);
    const double cap = sc.power * sc.num_samples();
    if (dv.s.squaredNorm() > cap) dv.s *= std::sqrt(cap / dv.s.squaredNorm());
    return dv;
}

// Desk-scale problem: 4x4 RIS, 2 sources, N = 8, K = 8, 10x10 angles.
inline Scene desk_scene() {
    Scene sc;
    sc.ris.rows = 4;
    sc.ris.cols = 4;
    sc.signal.pulse_duration = 8.0 / 100e6;
    sc.sources = SourceSet::behind_quadrants(sc.ris, 2, 0.3);
    return sc;
}

inline Grids desk_grids(const Scene& sc) { return Grids::regular(sc.signal, 8, 10, 10); }

}  // namespace risdfrc::testing
