// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "risdfrc/scene.hpp"
#include "support.hpp"

using namespace risdfrc;

TEST_CASE("steering vector is all ones at broadside") {
    RisGeometry geom{4, 4, 0.05};
    SignalParams sig;
    for (const double f : {-4e7, 0.0, 3.1e7}) {
        const Eigen::VectorXcd v = steering_vector(f, 0.0, 0.0, geom, sig);
        for (int i = 0; i < geom.size(); ++i) {
            CHECK(std::abs(v[i] - cplx(1.0, 0.0)) < 1e-14);
        }
    }
}

TEST_CASE("steering vector of a half-wavelength pair along x") {
    SignalParams sig;
    const double wavelength = kSpeedOfLight / sig.carrier;
    RisGeometry geom{1, 2, wavelength / 2.0};
    // Element 0 sits at -x, element 1 at +x; u_x = sin(phi) at theta = 0.
    const double phi = 1.2;
    const double ux = std::sin(phi);
    const Eigen::VectorXcd v = steering_vector(0.0, 0.0, phi, geom, sig);
    CHECK(std::abs(v[0] - std::polar(1.0, kPi / 2.0 * ux)) < 1e-12);
    CHECK(std::abs(v[1] - std::polar(1.0, -kPi / 2.0 * ux)) < 1e-12);
    // Phase difference approaches pi as u_x -> 1.
    CHECK(std::abs(std::arg(v[0] / v[1]) - kPi * ux) < 1e-12);
}

TEST_CASE("steering vector has unit-modulus entries and squared norm M") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Scene sc = testing::tiny_random_scene(rng);
        const double f = sc.signal.bandwidth * (rng.next_double() - 0.5);
        const double theta = 1.4 * (rng.next_double() - 0.5);
        const double phi = 1.4 * (rng.next_double() - 0.5);
        const Eigen::VectorXcd v = steering_vector(f, theta, phi, sc.ris, sc.signal);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            CHECK(std::abs(std::abs(v[i]) - 1.0) <= 1e-12);
        }
        CHECK(v.squaredNorm() == doctest::Approx(sc.num_elements()).epsilon(1e-12));
    }
}

TEST_CASE("steering vector rejects angles at or beyond the domain edge") {
    RisGeometry geom{2, 2, 0.05};
    SignalParams sig;
    CHECK_THROWS_AS(steering_vector(0.0, kPi / 2.0, 0.0, geom, sig), std::domain_error);
    CHECK_THROWS_AS(steering_vector(0.0, 0.0, -1.6, geom, sig), std::domain_error);
}

TEST_CASE("source-RIS gain: on-boresight magnitude") {
    Scene sc;
    sc.ris = RisGeometry{1, 1, 0.05};
    const double d = 0.75;
    sc.sources.positions = {{0.0, 0.0, -d}};
    sc.sources.boresights = {{0.0, 0.0, 1.0}};
    const double f_rf = sc.signal.carrier;
    const cplx g = source_ris_gain(f_rf, 0, 0, sc);
    const double g0s = sc.source_pattern.peak_gain;
    const double g0e = sc.ris_pattern.peak_gain;
    const double expected = std::sqrt(g0s) *
                            std::sqrt((kSpeedOfLight / f_rf) * (kSpeedOfLight / f_rf) * g0e /
                                      (4.0 * kPi)) /
                            std::sqrt(4.0 * kPi * d * d);
    CHECK(std::abs(g) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("source-RIS gain vanishes behind the source hemisphere") {
    Scene sc;
    sc.ris = RisGeometry{1, 1, 0.05};
    sc.sources.positions = {{0.0, 0.0, -0.5}};
    sc.sources.boresights = {{0.0, 0.0, -1.0}};  // pointing away from the RIS
    CHECK(std::abs(source_ris_gain(sc.signal.carrier, 0, 0, sc)) == 0.0);
}

TEST_CASE("source-RIS gain follows the 1/d free-space law") {
    Scene sc;
    sc.ris = RisGeometry{1, 1, 0.05};
    sc.sources.positions = {{0.0, 0.0, -0.4}};
    sc.sources.boresights = {{0.0, 0.0, 1.0}};
    const double g1 = std::abs(source_ris_gain(sc.signal.carrier, 0, 0, sc));
    sc.sources.positions[0].z() = -0.8;
    const double g2 = std::abs(source_ris_gain(sc.signal.carrier, 0, 0, sc));
    CHECK(g2 == doctest::Approx(g1 / 2.0).epsilon(1e-12));
}

TEST_CASE("source-RIS gain rejects coincident positions") {
    Scene sc;
    sc.ris = RisGeometry{1, 1, 0.05};
    sc.sources.positions = {{0.0, 0.0, 0.0}};
    sc.sources.boresights = {{0.0, 0.0, 1.0}};
    CHECK_THROWS_AS(source_ris_gain(sc.signal.carrier, 0, 0, sc), std::domain_error);
}

TEST_CASE("omega matrix at broadside is sqrt(G0) times the gain matrix") {
    SplitMix64 rng(11);
    const Scene sc = testing::tiny_random_scene(rng);
    const double f = 0.1 * sc.signal.bandwidth;
    const Eigen::MatrixXcd omega = omega_matrix(f, 0.0, 0.0, sc);
    const double root_g0 = std::sqrt(sc.ris_pattern.peak_gain);
    for (int i = 0; i < sc.num_elements(); ++i) {
        for (int q = 0; q < sc.num_sources(); ++q) {
            const cplx expected = root_g0 * source_ris_gain(f + sc.signal.carrier, q, i, sc);
            CHECK(std::abs(omega(i, q) - expected) < 1e-14 * std::abs(expected) + 1e-300);
        }
    }
}

TEST_CASE("omega matrix scalar case matches a hand-computed product") {
    Scene sc;
    sc.ris = RisGeometry{1, 1, 0.05};
    sc.sources.positions = {{0.05, -0.02, -0.6}};
    sc.sources.boresights = {{0.0, 0.0, 1.0}};
    const double f = -2e7, theta = 0.3, phi = -0.25;
    const double cos_bore = std::cos(theta) * std::cos(phi);
    const cplx expected = source_ris_gain(f + sc.signal.carrier, 0, 0, sc) *
                          std::sqrt(sc.ris_pattern.peak_gain * cos_bore);
    const Eigen::MatrixXcd omega = omega_matrix(f, theta, phi, sc);
    CHECK(std::abs(omega(0, 0) - expected) < 1e-14 * std::abs(expected));
}

TEST_CASE("q matrix shape and f = 0 block structure") {
    Scene sc = Scene::reference();
    const Eigen::MatrixXcd q = q_matrix(0.0, 0.1, -0.2, sc);
    CHECK(q.rows() == 100);
    CHECK(q.cols() == 4 * 64);

    const Eigen::MatrixXcd omega = omega_matrix(0.0, 0.1, -0.2, sc);
    const double scale = 1.0 / (sc.signal.bandwidth * std::sqrt(sc.signal.pulse_duration));
    for (int ns = 0; ns < 3; ++ns) {  // spot-check a few blocks
        const Eigen::MatrixXcd block = q.middleCols(ns * 4, 4);
        CHECK((block - scale * omega).cwiseAbs().maxCoeff() < 1e-18);
    }
}

TEST_CASE("matrix response equals the direct channel summation on tiny instances") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const Scene sc = testing::tiny_random_scene(rng);
        const DesignVariables dv = testing::random_design(sc, rng);
        const double f = sc.signal.bandwidth * (rng.next_double() - 0.5);
        const double theta = 1.5 * (rng.next_double() - 0.5);
        const double phi = 1.5 * (rng.next_double() - 0.5);

        // Kronecker/matrix route...
        const Eigen::VectorXcd v = steering_vector(f, theta, phi, sc.ris, sc.signal);
        const Eigen::MatrixXcd q = q_matrix(f, theta, phi, sc);
        const Eigen::VectorXcd qs = q * dv.s;
        cplx via_q(0.0, 0.0);
        for (int i = 0; i < sc.num_elements(); ++i) via_q += std::conj(v[i]) * dv.x[i] * qs[i];
        // ...the grid_response fast path...
        const cplx via_response = grid_response(dv, f, theta, phi, sc);
        // ...and the per-term double sum.
        const cplx direct = testing::direct_response(dv, f, theta, phi, sc);

        const double scale = std::abs(direct) + 1e-12;
        CHECK(std::abs(via_q - direct) / scale < 1e-10);
        CHECK(std::abs(via_response - direct) / scale < 1e-10);
    }
}

TEST_CASE("beampattern invariances: zero s, global phase, homogeneity") {
    SplitMix64 rng(31);
    const Scene sc = testing::tiny_random_scene(rng);
    DesignVariables dv = testing::random_design(sc, rng);
    const double f = 0.2 * sc.signal.bandwidth, theta = 0.4, phi = -0.3;

    const double base = beampattern_value(dv, f, theta, phi, sc);

    DesignVariables zero = dv;
    zero.s.setZero();
    CHECK(beampattern_value(zero, f, theta, phi, sc) == 0.0);

    DesignVariables rotated = dv;
    rotated.x *= std::polar(1.0, 1.234);
    CHECK(beampattern_value(rotated, f, theta, phi, sc) ==
          doctest::Approx(base).epsilon(1e-12));
    rotated = dv;
    rotated.s *= std::polar(1.0, -2.1);
    CHECK(beampattern_value(rotated, f, theta, phi, sc) ==
          doctest::Approx(base).epsilon(1e-12));

    DesignVariables scaled = dv;
    scaled.s *= 0.25;
    CHECK(beampattern_value(scaled, f, theta, phi, sc) ==
          doctest::Approx(0.25 * base).epsilon(1e-12));
}

TEST_CASE("element pattern support makes the pattern vanish past 90 degrees") {
    ElementPattern pat;
    CHECK(pat.power_gain(std::cos(kPi / 2.0 + 0.2)) == 0.0);
    CHECK(pat.amplitude(-0.1) == 0.0);
    CHECK(pat.power_gain(1.0) == doctest::Approx(pat.peak_gain));
}

TEST_CASE("beampattern map matches pointwise evaluation") {
    SplitMix64 rng(41);
    const Scene sc = testing::tiny_random_scene(rng);
    const DesignVariables dv = testing::random_design(sc, rng);
    const Grids grids = Grids::regular(sc.signal, 3, 4, 5);
    const BeampatternMap map = beampattern_map(dv, grids, sc);
    CHECK(map.values.rows() == 3);
    CHECK(map.values.cols() == 20);
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 20; ++l) {
            const double direct =
                beampattern_value(dv, grids.freqs[k], grids.theta[l], grids.phi[l], sc);
            CHECK(map.values(k, l) == doctest::Approx(direct).epsilon(1e-12));
        }
    }

    DesignVariables zero = dv;
    zero.s.setZero();
    CHECK(beampattern_map(zero, grids, sc).values.maxCoeff() == 0.0);
}

TEST_CASE("normalized power map") {
    BeampatternMap map;
    map.values.resize(1, 2);
    map.values << 1.0, 2.0;
    const Eigen::MatrixXd npb = normalized_power_map(map);
    CHECK(npb(0, 0) == doctest::Approx(0.25));
    CHECK(npb(0, 1) == 1.0);

    map.values.setConstant(3.7);
    const Eigen::MatrixXd ones = normalized_power_map(map);
    CHECK(ones.minCoeff() == 1.0);
    CHECK(normalized_power_db(map).cwiseAbs().maxCoeff() == 0.0);

    map.values.setZero();
    CHECK_THROWS_AS(normalized_power_map(map), std::domain_error);
}

TEST_CASE("design variable validation enforces unit modulus and the power cap") {
    SplitMix64 rng(53);
    const Scene sc = testing::tiny_random_scene(rng);
    DesignVariables dv = testing::random_design(sc, rng);
    CHECK_NOTHROW(dv.validate(sc));

    DesignVariables bad_x = dv;
    bad_x.x[0] *= 1.5;
    CHECK_THROWS_AS(bad_x.validate(sc), std::invalid_argument);

    DesignVariables bad_s = dv;
    bad_s.s *= 1e3;
    CHECK_THROWS_AS(bad_s.validate(sc), std::invalid_argument);
}
