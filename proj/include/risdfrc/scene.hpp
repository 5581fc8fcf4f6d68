// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.
//
// Scene model: geometry, element patterns, source-RIS channels, steering
// vectors, and the amplitude beampattern B(f;theta,phi) they induce.
//
// Conventions (used throughout the library):
//  - RIS elements lie in the x-y plane, centered at the origin, broadside +z.
//  - theta is elevation, phi is azimuth; the propagation unit vector is
//        u(theta, phi) = (cos(theta) sin(phi), sin(theta), cos(theta) cos(phi)),
//    so broadside is (theta, phi) = (0, 0).
//  - The differential delay of element i is tau_i = -p_i . u / c.
//  - Waveform samples are stored sample-major: s = [s_1; ...; s_N] with each
//    s_n holding the n-th sample of all J sources.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "risdfrc/common.hpp"

namespace risdfrc {

/// Planar RIS aperture: rows x cols elements on a regular grid.
struct RisGeometry {
    int rows = 10;
    int cols = 10;
    double spacing = 0.5 * kSpeedOfLight / 3.0e9;  // meters between adjacent elements

    int size() const { return rows * cols; }

    /// Position of element i (row-major index), centered so the aperture's
    /// center of gravity is the origin.
    Eigen::Vector3d element_position(int i) const;

    void validate() const;  // throws std::invalid_argument
};

/// Cosine power pattern G(psi) = G0 cos(psi) for psi in [0, pi/2), 0 beyond.
struct ElementPattern {
    double peak_gain = 4.0;  // G0; 4 normalizes the hemispheric integral to 4*pi

    /// Power gain as a function of cos(psi), psi the angle from boresight.
    double power_gain(double cos_psi) const { return cos_psi > 0.0 ? peak_gain * cos_psi : 0.0; }
    /// Amplitude pattern (square root of the power gain).
    double amplitude(double cos_psi) const;
};

/// Active sources illuminating the RIS (a transmitting RIS keeps them at z < 0).
struct SourceSet {
    std::vector<Eigen::Vector3d> positions;
    std::vector<Eigen::Vector3d> boresights;  // unit vectors, one per source

    int size() const { return static_cast<int>(positions.size()); }
    void validate() const;

    /// Sources placed behind the RIS at the centroids of its quadrants
    /// (half-planes for count = 2, on-axis for count = 1), boresight +z.
    static SourceSet behind_quadrants(const RisGeometry& geom, int count, double distance);
};

/// Pulse/bandwidth/carrier parameters; N = floor(W*T) samples at rate W.
struct SignalParams {
    double pulse_duration = 0.64e-6;  // T, seconds
    double bandwidth = 100e6;         // W, Hz
    double carrier = 3e9;             // f_c, Hz

    int num_samples() const { return static_cast<int>(bandwidth * pulse_duration + 1e-9); }
    void validate() const;
};

/// Evaluation grids: K baseband frequencies and L = n_theta * n_phi directions.
///
/// Frequencies are the K points -W/2 + k*W/K (half-open, so band-edge cuts
/// such as -3W/8 land exactly on the grid). Angles are cell centers of a
/// uniform n_theta x n_phi partition of [-pi/2, pi/2]^2, which keeps every
/// direction strictly inside the valid domain. Flattened angle index is
/// l = it * n_phi + ip.
struct Grids {
    Eigen::VectorXd freqs;       // K baseband frequencies, Hz
    Eigen::VectorXd theta, phi;  // L entries each, radians
    int n_theta = 0, n_phi = 0;  // 0 when the angle list is irregular

    int num_freqs() const { return static_cast<int>(freqs.size()); }
    int num_angles() const { return static_cast<int>(theta.size()); }

    static Grids regular(const SignalParams& sig, int num_freq, int n_theta, int n_phi);
    void validate(const SignalParams& sig) const;
};

/// Full physical description of the RIS transmitter scenario.
struct Scene {
    RisGeometry ris;
    ElementPattern ris_pattern;
    SourceSet sources;
    ElementPattern source_pattern;
    SignalParams signal;
    double power = 10.0;  // P, available power at the illuminator, watts

    int num_elements() const { return ris.size(); }
    int num_sources() const { return sources.size(); }
    int num_samples() const { return signal.num_samples(); }
    void validate() const;

    /// The 10x10 / 4-source / 100 MHz / 3 GHz scenario used by the bundled configs.
    static Scene reference();
};

/// Joint design variables: waveform samples s (length J*N) and RIS response x
/// (length M, unit modulus).
struct DesignVariables {
    Eigen::VectorXcd s;
    Eigen::VectorXcd x;

    /// Checks |x_i| = 1 (tol 1e-12) and (1/N)||s||^2 <= P (tol 1e-12 relative).
    void validate(const Scene& scene) const;
};

/// Amplitude beampattern evaluated on the grids: values(k, l) = B(f_k; theta_l, phi_l).
struct BeampatternMap {
    Eigen::MatrixXd values;  // K x L, nonnegative
    Grids grids;
};

/// Propagation direction unit vector of the (theta, phi) convention above.
Eigen::Vector3d propagation_dir(double theta, double phi);

/// Steering vector v(f;theta,phi): entry i is exp(2*pi*i*(f+f_c)*tau_i).
/// Throws std::domain_error when |theta| or |phi| reaches pi/2.
Eigen::VectorXcd steering_vector(double f, double theta, double phi, const RisGeometry& geom,
                                 const SignalParams& sig);

/// Source-to-element channel G_ij at RF frequency f_rf: free-space term times
/// the source amplitude pattern times the square root of the element's
/// effective area. Throws std::domain_error for coincident positions.
cplx source_ris_gain(double f_rf, int source_idx, int element_idx, const Scene& scene);

/// M x J matrix with entries Omega_ij = G_ij(f + f_c) * Gamma_i(theta, phi).
Eigen::MatrixXcd omega_matrix(double f, double theta, double phi, const Scene& scene);

/// M x (J*N) matrix Q = (1/(W sqrt(T))) * Omega * (e^T(f) kron I_J) with
/// e_n(f) = exp(-2*pi*i*n*f/W), n = 1..N.
Eigen::MatrixXcd q_matrix(double f, double theta, double phi, const Scene& scene);

/// Complex far-field response v^H diag(x) Q s at one space-frequency point.
cplx grid_response(const DesignVariables& dv, double f, double theta, double phi,
                   const Scene& scene);

/// Amplitude beampattern B = |v^H diag(x) Q s|.
double beampattern_value(const DesignVariables& dv, double f, double theta, double phi,
                         const Scene& scene);

/// Evaluates the beampattern on every grid point (parallel over frequencies,
/// deterministic result).
BeampatternMap beampattern_map(const DesignVariables& dv, const Grids& grids, const Scene& scene);

/// Normalized power beampattern B^2 / max(B^2); throws on an all-zero map.
Eigen::MatrixXd normalized_power_map(const BeampatternMap& map);

/// Normalized power beampattern in dB: 10*log10(B^2 / max(B^2)).
Eigen::MatrixXd normalized_power_db(const BeampatternMap& map);

}  // namespace risdfrc
