// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.

#include "risdfrc/mimo.hpp"

#include <cmath>

namespace risdfrc {

MimoScenario mimo_reference() {
    MimoScenario sc;
    sc.array = RisGeometry{};  // 10x10 at half-wavelength, broadside +z
    sc.signal = SignalParams{};
    return sc;
}

cplx mimo_grid_response(const Eigen::VectorXcd& s, double f, double theta, double phi,
                        const MimoScenario& scene) {
    const int m = scene.num_antennas();
    const int n = scene.signal.num_samples();
    const double w = scene.signal.bandwidth;

    Eigen::VectorXcd shat = Eigen::VectorXcd::Zero(m);
    for (int ns = 0; ns < n; ++ns) {
        shat += sample_phase(ns + 1, f, w) * s.segment(ns * m, m);
    }
    const Eigen::VectorXcd v = steering_vector(f, theta, phi, scene.array, scene.signal);
    const double gamma = scene.pattern.amplitude(propagation_dir(theta, phi).z());

    cplx acc(0.0, 0.0);
    for (int i = 0; i < m; ++i) acc += std::conj(v[i]) * gamma * shat[i];
    return acc / (w * std::sqrt(scene.signal.pulse_duration));
}

double mimo_beampattern_value(const Eigen::VectorXcd& s, double f, double theta, double phi,
                              const MimoScenario& scene) {
    return std::abs(mimo_grid_response(s, f, theta, phi, scene));
}

BeampatternMap mimo_beampattern_map(const Eigen::VectorXcd& s, const Grids& grids,
                                    const MimoScenario& scene) {
    BeampatternMap map;
    map.grids = grids;
    map.values.resize(grids.num_freqs(), grids.num_angles());
    const MimoTables tables(scene, grids);
    const Eigen::VectorXcd t = tables.responses(s);
    for (Eigen::Index kl = 0; kl < t.size(); ++kl) {
        map.values(kl / grids.num_angles(), kl % grids.num_angles()) = std::abs(t[kl]);
    }
    return map;
}

std::pair<Eigen::VectorXcd, ObjectiveTrace> design_mimo(const DesiredPattern& desired,
                                                        const MimoScenario& scene,
                                                        const Grids& grids,
                                                        const OptimConfig& cfg) {
    cfg.validate();
    const MimoTables tables(scene, grids);
    const SolveOptions opts = cfg.solve_options();
    const double cap = scene.power * scene.signal.num_samples();

    const Eigen::VectorXcd targets0 = detail::lift_targets(
        desired.d, Eigen::MatrixXd::Zero(desired.d.rows(), desired.d.cols()));
    Eigen::VectorXcd s = solve_unconstrained(tables.assemble_system(targets0, desired.w), opts);
    const double norm_sq = s.squaredNorm();
    if (norm_sq > cap) s *= std::sqrt(cap / norm_sq);

    Eigen::VectorXcd t = tables.responses(s);
    double objective = detail::true_objective(desired.d, t, desired.w);

    ObjectiveTrace trace;
    trace.objectives.push_back(objective);

    for (int iter = 1; iter <= cfg.max_outer_iters; ++iter) {
        const Eigen::VectorXcd targets = detail::phase_align(desired.d, t);
        s = solve_power_constrained(tables.assemble_system(targets, desired.w), cap, opts).s;
        t = tables.responses(s);

        const double next = detail::true_objective(desired.d, t, desired.w);
        trace.objectives.push_back(next);
        trace.iterations = iter;

        const bool stalled = objective - next <= cfg.rel_obj_tol * objective;
        objective = next;
        if (stalled) {
            trace.converged = true;
            break;
        }
    }
    trace.final_objective = objective;
    return {std::move(s), std::move(trace)};
}

}  // namespace risdfrc
