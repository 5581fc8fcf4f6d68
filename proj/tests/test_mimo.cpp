// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "risdfrc/mimo.hpp"
#include "support.hpp"

using namespace risdfrc;

namespace {

MimoScenario desk_mimo() {
    MimoScenario sc;
    sc.array = RisGeometry{2, 2, 0.05};
    sc.signal.pulse_duration = 4.0 / 100e6;  // N = 4
    return sc;
}

// Direct per-antenna summation with hand-computed steering phases.
cplx direct_mimo_response(const Eigen::VectorXcd& s, double f, double theta, double phi,
                          const MimoScenario& sc) {
    const double w = sc.signal.bandwidth;
    const double f_rf = f + sc.signal.carrier;
    const int m = sc.num_antennas();
    const int n = sc.signal.num_samples();
    const Eigen::Vector3d u(std::cos(theta) * std::sin(phi), std::sin(theta),
                            std::cos(theta) * std::cos(phi));
    const double gamma = u.z() > 0.0 ? std::sqrt(sc.pattern.peak_gain * u.z()) : 0.0;
    cplx acc(0.0, 0.0);
    for (int i = 0; i < m; ++i) {
        const double tau = -sc.array.element_position(i).dot(u) / kSpeedOfLight;
        const cplx steer_conj = std::polar(1.0, -2.0 * kPi * f_rf * tau);
        cplx spectrum(0.0, 0.0);
        for (int ns = 0; ns < n; ++ns) {
            spectrum += s[ns * m + i] * std::polar(1.0, -2.0 * kPi * (ns + 1) * f / w);
        }
        acc += steer_conj * gamma * spectrum;
    }
    return acc / (w * std::sqrt(sc.signal.pulse_duration));
}

}  // namespace

TEST_CASE("mimo beampattern on zero waveform is zero") {
    const MimoScenario sc = desk_mimo();
    const Eigen::VectorXcd s =
        Eigen::VectorXcd::Zero(sc.num_antennas() * sc.signal.num_samples());
    CHECK(mimo_beampattern_value(s, 1e7, 0.2, -0.1, sc) == 0.0);
}

TEST_CASE("single-antenna beampattern reduces to the scaled source spectrum") {
    MimoScenario sc;
    sc.array = RisGeometry{1, 1, 0.05};
    sc.signal.pulse_duration = 4.0 / 100e6;
    SplitMix64 rng(401);
    const int n = sc.signal.num_samples();
    const Eigen::VectorXcd s = testing::random_complex_vector(n, rng);

    const double f = 1.7e7;
    // S_1(f) = (1/W) sum_n s(n) e(-2 pi i n f / W); B = sqrt(G0) |S_1| / sqrt(T).
    cplx spectrum(0.0, 0.0);
    for (int ns = 0; ns < n; ++ns) {
        spectrum += s[ns] * std::polar(1.0, -2.0 * kPi * (ns + 1) * f / sc.signal.bandwidth) /
                    sc.signal.bandwidth;
    }
    const double expected = std::sqrt(sc.pattern.peak_gain) * std::abs(spectrum) /
                            std::sqrt(sc.signal.pulse_duration);
    CHECK(mimo_beampattern_value(s, f, 0.0, 0.0, sc) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("mimo response matches the direct summation and is invariant") {
    const MimoScenario sc = desk_mimo();
    SplitMix64 rng(403);
    const Eigen::VectorXcd s =
        testing::random_complex_vector(sc.num_antennas() * sc.signal.num_samples(), rng);
    for (int trial = 0; trial < 10; ++trial) {
        const double f = sc.signal.bandwidth * (rng.next_double() - 0.5);
        const double theta = 1.5 * (rng.next_double() - 0.5);
        const double phi = 1.5 * (rng.next_double() - 0.5);
        const cplx lib = mimo_grid_response(s, f, theta, phi, sc);
        const cplx direct = direct_mimo_response(s, f, theta, phi, sc);
        CHECK(std::abs(lib - direct) <= 1e-10 * (std::abs(direct) + 1e-12));
    }

    const double base = mimo_beampattern_value(s, 1e7, 0.3, 0.2, sc);
    CHECK(mimo_beampattern_value(std::polar(1.0, 0.9) * s, 1e7, 0.3, 0.2, sc) ==
          doctest::Approx(base).epsilon(1e-12));
    CHECK(mimo_beampattern_value(3.0 * s, 1e7, 0.3, 0.2, sc) ==
          doctest::Approx(3.0 * base).epsilon(1e-12));
}

TEST_CASE("mimo map agrees with pointwise evaluation") {
    const MimoScenario sc = desk_mimo();
    SplitMix64 rng(405);
    const Eigen::VectorXcd s =
        testing::random_complex_vector(sc.num_antennas() * sc.signal.num_samples(), rng);
    const Grids grids = Grids::regular(sc.signal, 3, 4, 4);
    const BeampatternMap map = mimo_beampattern_map(s, grids, sc);
    for (int k = 0; k < grids.num_freqs(); ++k) {
        for (int l = 0; l < grids.num_angles(); ++l) {
            CHECK(map.values(k, l) ==
                  doctest::Approx(mimo_beampattern_value(s, grids.freqs[k], grids.theta[l],
                                                         grids.phi[l], sc))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("design_mimo: zero desired gives zero waveform") {
    const MimoScenario sc = desk_mimo();
    const Grids grids = Grids::regular(sc.signal, 4, 6, 6);
    Scene helper = testing::desk_scene();
    helper.signal = sc.signal;
    DesiredPattern desired = build_desired(0.5, helper, grids);
    desired.d.setZero();

    OptimConfig cfg;
    const auto [s, trace] = design_mimo(desired, sc, grids, cfg);
    CHECK(s.norm() == 0.0);
    CHECK(trace.converged);
}

TEST_CASE("design_mimo: monotone trace, feasibility, and seed determinism") {
    const MimoScenario sc = desk_mimo();
    const Grids grids = Grids::regular(sc.signal, 4, 8, 8);
    Scene helper = testing::desk_scene();
    helper.signal = sc.signal;
    const DesiredPattern desired = build_desired(0.5, helper, grids);

    OptimConfig cfg;
    cfg.max_outer_iters = 30;
    const auto [s, trace] = design_mimo(desired, sc, grids, cfg);
    for (std::size_t i = 1; i < trace.objectives.size(); ++i) {
        CHECK(trace.objectives[i] <= trace.objectives[i - 1] * (1.0 + 1e-9) + 1e-18);
    }
    CHECK(s.squaredNorm() <= sc.power * sc.signal.num_samples() * (1.0 + 1e-10));

    const auto [s2, trace2] = design_mimo(desired, sc, grids, cfg);
    CHECK((s - s2).norm() == 0.0);
}

TEST_CASE("mimo reaches a lower objective than the RIS on the same problem") {
    // Same aperture, same desired pattern, same power: the fully digital
    // array has strictly more degrees of freedom.
    Scene ris = testing::desk_scene();
    const Grids grids = testing::desk_grids(ris);
    const DesiredPattern desired = build_desired(0.5, ris, grids);

    MimoScenario mimo;
    mimo.array = ris.ris;
    mimo.signal = ris.signal;
    mimo.power = ris.power;

    OptimConfig cfg;
    cfg.max_outer_iters = 60;

    double best_ris = std::numeric_limits<double>::infinity();
    for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        OptimConfig c = cfg;
        c.seed = seed;
        best_ris = std::min(best_ris, run_bcd(desired, ris, grids, c).second.final_objective);
    }
    const double mimo_obj = design_mimo(desired, mimo, grids, cfg).second.final_objective;
    CHECK(mimo_obj <= best_ris * (1.0 + 5e-2));
}
