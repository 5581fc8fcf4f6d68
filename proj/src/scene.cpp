// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.

#include "risdfrc/scene.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risdfrc {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_angle_domain(double theta, double phi) {
    if (std::abs(theta) >= kPi / 2.0 || std::abs(phi) >= kPi / 2.0) {
        throw std::domain_error("angle at or beyond +-pi/2: theta=" + std::to_string(theta) +
                                ", phi=" + std::to_string(phi));
    }
}

}  // namespace

Eigen::Vector3d RisGeometry::element_position(int i) const {
    const int r = i / cols;
    const int c = i % cols;
    return {(c - 0.5 * (cols - 1)) * spacing, (r - 0.5 * (rows - 1)) * spacing, 0.0};
}

void RisGeometry::validate() const {
    require(rows >= 1 && cols >= 1, "RIS geometry: rows and cols must be >= 1");
    require(spacing > 0.0, "RIS geometry: spacing must be > 0");
}

double ElementPattern::amplitude(double cos_psi) const {
    return cos_psi > 0.0 ? std::sqrt(peak_gain * cos_psi) : 0.0;
}

void SourceSet::validate() const {
    require(size() >= 1, "source set: at least one source required");
    require(boresights.size() == positions.size(), "source set: one boresight per source");
    for (const auto& p : positions) {
        require(p.z() != 0.0, "source set: sources must lie strictly off the RIS plane");
    }
}

SourceSet SourceSet::behind_quadrants(const RisGeometry& geom, int count, double distance) {
    require(count == 1 || count == 2 || count == 4,
            "quadrant source placement supports 1, 2, or 4 sources");
    require(distance > 0.0, "source distance must be > 0");

    // Centroid of the strictly-positive-x (and, for 4 sources, positive-y) elements.
    double sx = 0.0, sy = 0.0;
    int nx = 0, ny = 0;
    for (int i = 0; i < geom.size(); ++i) {
        const Eigen::Vector3d p = geom.element_position(i);
        if (p.x() > 0.0) {
            sx += p.x();
            ++nx;
        }
        if (p.y() > 0.0) {
            sy += p.y();
            ++ny;
        }
    }
    const double xq = nx > 0 ? sx / nx : 0.5 * geom.spacing;
    const double yq = ny > 0 ? sy / ny : 0.5 * geom.spacing;

    SourceSet set;
    if (count == 1) {
        set.positions = {{0.0, 0.0, -distance}};
    } else if (count == 2) {
        set.positions = {{xq, 0.0, -distance}, {-xq, 0.0, -distance}};
    } else {
        set.positions = {{xq, yq, -distance},
                         {-xq, yq, -distance},
                         {-xq, -yq, -distance},
                         {xq, -yq, -distance}};
    }
    set.boresights.assign(set.positions.size(), Eigen::Vector3d(0.0, 0.0, 1.0));
    return set;
}

void SignalParams::validate() const {
    require(bandwidth > 0.0, "signal: bandwidth must be > 0");
    require(pulse_duration > 0.0, "signal: pulse duration must be > 0");
    require(carrier > bandwidth / 2.0, "signal: carrier must exceed W/2");
    require(num_samples() >= 1, "signal: W*T must give at least one sample");
}

Grids Grids::regular(const SignalParams& sig, int num_freq, int n_theta, int n_phi) {
    require(num_freq >= 1 && n_theta >= 1 && n_phi >= 1, "grids: counts must be >= 1");
    Grids g;
    g.freqs.resize(num_freq);
    const double w = sig.bandwidth;
    for (int k = 0; k < num_freq; ++k) g.freqs[k] = -w / 2.0 + k * w / num_freq;

    g.n_theta = n_theta;
    g.n_phi = n_phi;
    const int L = n_theta * n_phi;
    g.theta.resize(L);
    g.phi.resize(L);
    for (int it = 0; it < n_theta; ++it) {
        const double th = -kPi / 2.0 + (it + 0.5) * kPi / n_theta;
        for (int ip = 0; ip < n_phi; ++ip) {
            const double ph = -kPi / 2.0 + (ip + 0.5) * kPi / n_phi;
            g.theta[it * n_phi + ip] = th;
            g.phi[it * n_phi + ip] = ph;
        }
    }
    return g;
}

void Grids::validate(const SignalParams& sig) const {
    require(num_freqs() >= 1 && num_angles() >= 1, "grids: empty grid");
    require(theta.size() == phi.size(), "grids: theta/phi length mismatch");
    const double half = sig.bandwidth / 2.0;
    for (int k = 0; k < num_freqs(); ++k) {
        require(freqs[k] >= -half && freqs[k] <= half, "grids: frequency outside [-W/2, W/2]");
    }
    for (int l = 0; l < num_angles(); ++l) {
        require(std::abs(theta[l]) < kPi / 2.0 && std::abs(phi[l]) < kPi / 2.0,
                "grids: angles must lie strictly inside (-pi/2, pi/2)");
    }
}

void Scene::validate() const {
    ris.validate();
    sources.validate();
    signal.validate();
    require(power > 0.0, "scene: power budget must be > 0");
    require(ris_pattern.peak_gain > 0.0 && source_pattern.peak_gain > 0.0,
            "scene: pattern peak gains must be > 0");
}

Scene Scene::reference() {
    Scene sc;
    sc.ris = RisGeometry{};
    sc.sources = SourceSet::behind_quadrants(sc.ris, 4, 0.60);
    return sc;
}

void DesignVariables::validate(const Scene& scene) const {
    require(x.size() == scene.num_elements(), "design variables: x has wrong length");
    require(s.size() ==
                static_cast<Eigen::Index>(scene.num_sources()) * scene.num_samples(),
            "design variables: s has wrong length");
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (std::abs(std::abs(x[i]) - 1.0) > 1e-12) {
            throw std::invalid_argument("design variables: |x_i| != 1 at index " +
                                        std::to_string(i));
        }
    }
    const double cap = scene.power * scene.num_samples();
    if (s.squaredNorm() > cap * (1.0 + 1e-12)) {
        throw std::invalid_argument("design variables: waveform power exceeds budget");
    }
}

Eigen::Vector3d propagation_dir(double theta, double phi) {
    return {std::cos(theta) * std::sin(phi), std::sin(theta), std::cos(theta) * std::cos(phi)};
}

Eigen::VectorXcd steering_vector(double f, double theta, double phi, const RisGeometry& geom,
                                 const SignalParams& sig) {
    check_angle_domain(theta, phi);
    const Eigen::Vector3d u = propagation_dir(theta, phi);
    const double f_rf = f + sig.carrier;
    Eigen::VectorXcd v(geom.size());
    for (int i = 0; i < geom.size(); ++i) {
        const double tau = -geom.element_position(i).dot(u) / kSpeedOfLight;
        v[i] = std::polar(1.0, 2.0 * kPi * f_rf * tau);
    }
    return v;
}

cplx source_ris_gain(double f_rf, int source_idx, int element_idx, const Scene& scene) {
    const Eigen::Vector3d ps = scene.sources.positions.at(source_idx);
    const Eigen::Vector3d pe = scene.ris.element_position(element_idx);
    const Eigen::Vector3d diff = pe - ps;
    const double d = diff.norm();
    if (d <= 0.0) throw std::domain_error("source_ris_gain: coincident source and element");
    const Eigen::Vector3d dir = diff / d;

    // Source pattern toward the element; element receive side faces -z.
    const double cos_src = scene.sources.boresights.at(source_idx).dot(dir);
    const double gamma_src = scene.source_pattern.amplitude(cos_src);
    const double cos_elem = Eigen::Vector3d(0.0, 0.0, -1.0).dot(-dir);
    const double eff_area =
        (kSpeedOfLight / f_rf) * (kSpeedOfLight / f_rf) / (4.0 * kPi) *
        scene.ris_pattern.power_gain(cos_elem);

    const double amp = gamma_src * std::sqrt(eff_area) / std::sqrt(4.0 * kPi * d * d);
    const double phase = -2.0 * kPi * f_rf * d / kSpeedOfLight;
    return std::polar(amp, phase);
}

Eigen::MatrixXcd omega_matrix(double f, double theta, double phi, const Scene& scene) {
    check_angle_domain(theta, phi);
    const int m = scene.num_elements();
    const int j = scene.num_sources();
    const double f_rf = f + scene.signal.carrier;
    const double cos_bore = propagation_dir(theta, phi).z();
    Eigen::MatrixXcd omega(m, j);
    for (int i = 0; i < m; ++i) {
        const double gamma = scene.ris_pattern.amplitude(cos_bore);
        for (int q = 0; q < j; ++q) omega(i, q) = source_ris_gain(f_rf, q, i, scene) * gamma;
    }
    return omega;
}

Eigen::MatrixXcd q_matrix(double f, double theta, double phi, const Scene& scene) {
    const int j = scene.num_sources();
    const int n = scene.num_samples();
    const double w = scene.signal.bandwidth;
    const Eigen::MatrixXcd omega = omega_matrix(f, theta, phi, scene);
    const double scale = 1.0 / (w * std::sqrt(scene.signal.pulse_duration));

    Eigen::MatrixXcd q(scene.num_elements(), j * n);
    for (int ns = 0; ns < n; ++ns) {
        const cplx en = std::polar(scale, -2.0 * kPi * (ns + 1) * f / w);
        q.middleCols(ns * j, j) = en * omega;
    }
    return q;
}

cplx grid_response(const DesignVariables& dv, double f, double theta, double phi,
                   const Scene& scene) {
    const int j = scene.num_sources();
    const int n = scene.num_samples();
    const double w = scene.signal.bandwidth;

    // shat = sum_n e_n(f) s_n, then v^H diag(x) Omega shat / (W sqrt(T)).
    Eigen::VectorXcd shat = Eigen::VectorXcd::Zero(j);
    for (int ns = 0; ns < n; ++ns) {
        const cplx en = std::polar(1.0, -2.0 * kPi * (ns + 1) * f / w);
        shat += en * dv.s.segment(ns * j, j);
    }
    const Eigen::MatrixXcd omega = omega_matrix(f, theta, phi, scene);
    const Eigen::VectorXcd v = steering_vector(f, theta, phi, scene.ris, scene.signal);
    const Eigen::VectorXcd qs = omega * shat;

    cplx acc(0.0, 0.0);
    for (int i = 0; i < scene.num_elements(); ++i) acc += std::conj(v[i]) * dv.x[i] * qs[i];
    return acc / (w * std::sqrt(scene.signal.pulse_duration));
}

double beampattern_value(const DesignVariables& dv, double f, double theta, double phi,
                         const Scene& scene) {
    return std::abs(grid_response(dv, f, theta, phi, scene));
}

BeampatternMap beampattern_map(const DesignVariables& dv, const Grids& grids, const Scene& scene) {
    const int k_count = grids.num_freqs();
    const int l_count = grids.num_angles();
    BeampatternMap map;
    map.grids = grids;
    map.values.resize(k_count, l_count);

#pragma omp parallel for schedule(static)
    for (int k = 0; k < k_count; ++k) {
        for (int l = 0; l < l_count; ++l) {
            map.values(k, l) =
                beampattern_value(dv, grids.freqs[k], grids.theta[l], grids.phi[l], scene);
        }
    }
    return map;
}

Eigen::MatrixXd normalized_power_map(const BeampatternMap& map) {
    const double peak = map.values.maxCoeff();
    if (!(peak > 0.0)) {
        throw std::domain_error("normalized_power_map: all-zero beampattern");
    }
    const double peak_sq = peak * peak;
    return map.values.array().square() / peak_sq;
}

Eigen::MatrixXd normalized_power_db(const BeampatternMap& map) {
    Eigen::MatrixXd npb = normalized_power_map(map);
    return 10.0 * npb.array().max(1e-300).log10();
}

}  // namespace risdfrc
