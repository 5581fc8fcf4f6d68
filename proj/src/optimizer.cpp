// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.

#include "risdfrc/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace risdfrc {

SolveOptions OptimConfig::solve_options() const {
    SolveOptions opts;
    opts.solver = solver;
    opts.bisect_tol = lambda_bisect_tol;
    opts.bisect_max_iters = lambda_bisect_max_iters;
    opts.cg_tol = cg_tol;
    opts.cg_max_iters = cg_max_iters;
    return opts;
}

void OptimConfig::validate() const {
    if (max_outer_iters < 1 || x_inner_sweeps < 1 || lambda_bisect_max_iters < 1 ||
        cg_max_iters < 1) {
        throw std::invalid_argument("optimizer config: iteration counts must be >= 1");
    }
    if (!(rel_obj_tol > 0.0) || !(lambda_bisect_tol > 0.0) || !(cg_tol > 0.0)) {
        throw std::invalid_argument("optimizer config: tolerances must be > 0");
    }
}

namespace detail {

Eigen::VectorXcd lift_targets(const Eigen::MatrixXd& d, const Eigen::MatrixXd& psi) {
    const Eigen::Index k_count = d.rows();
    const Eigen::Index l_count = d.cols();
    Eigen::VectorXcd targets(k_count * l_count);
    for (Eigen::Index k = 0; k < k_count; ++k) {
        for (Eigen::Index l = 0; l < l_count; ++l) {
            targets[k * l_count + l] = std::polar(d(k, l), psi(k, l));
        }
    }
    return targets;
}

Eigen::VectorXcd phase_align(const Eigen::MatrixXd& d, const Eigen::VectorXcd& t) {
    const Eigen::Index k_count = d.rows();
    const Eigen::Index l_count = d.cols();
    Eigen::VectorXcd targets(k_count * l_count);
    for (Eigen::Index k = 0; k < k_count; ++k) {
        for (Eigen::Index l = 0; l < l_count; ++l) {
            const cplx tv = t[k * l_count + l];
            const double psi = tv == cplx(0.0, 0.0) ? 0.0 : std::arg(tv);
            targets[k * l_count + l] = std::polar(d(k, l), psi);
        }
    }
    return targets;
}

double lifted_objective(const Eigen::VectorXcd& targets, const Eigen::VectorXcd& t,
                        const Eigen::MatrixXd& w) {
    const Eigen::Index l_count = w.cols();
    double acc = 0.0;
    for (Eigen::Index kl = 0; kl < targets.size(); ++kl) {
        acc += w(kl / l_count, kl % l_count) * std::norm(targets[kl] - t[kl]);
    }
    return acc;
}

double true_objective(const Eigen::MatrixXd& d, const Eigen::VectorXcd& t,
                      const Eigen::MatrixXd& w) {
    const Eigen::Index l_count = d.cols();
    double acc = 0.0;
    for (Eigen::Index kl = 0; kl < t.size(); ++kl) {
        const double diff = d(kl / l_count, kl % l_count) - std::abs(t[kl]);
        acc += w(kl / l_count, kl % l_count) * diff * diff;
    }
    return acc;
}

void ris_phase_sweeps(const RowMajorXcd& b, const Eigen::VectorXcd& targets,
                      const Eigen::MatrixXd& w, int sweeps, Eigen::VectorXcd& x,
                      Eigen::VectorXcd& t) {
    const Eigen::Index points = b.rows();
    const Eigen::Index m_count = b.cols();
    const Eigen::Index l_count = w.cols();
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (Eigen::Index m = 0; m < m_count; ++m) {
            const cplx xm = x[m];
            cplx zeta(0.0, 0.0);
            for (Eigen::Index kl = 0; kl < points; ++kl) {
                const cplx bm = b(kl, m);
                const cplx residual = targets[kl] - t[kl] + bm * xm;
                zeta += w(kl / l_count, kl % l_count) * std::conj(bm) * residual;
            }
            if (zeta == cplx(0.0, 0.0)) continue;  // objective-neutral
            const cplx x_new = zeta / std::abs(zeta);
            const cplx delta = x_new - xm;
            for (Eigen::Index kl = 0; kl < points; ++kl) t[kl] += b(kl, m) * delta;
            x[m] = x_new;
        }
    }
}

Eigen::VectorXcd random_phases(int count, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Eigen::VectorXcd x(count);
    for (int i = 0; i < count; ++i) x[i] = std::polar(1.0, 2.0 * kPi * rng.next_double());
    return x;
}

}  // namespace detail

double matching_objective(const DesignVariables& dv, const DesiredPattern& desired,
                          const Scene& scene, const Grids& grids) {
    const BeampatternMap map = beampattern_map(dv, grids, scene);
    return ((desired.d - map.values).array().square() * desired.w.array()).sum();
}

Eigen::MatrixXd update_aux_phases(const DesignVariables& dv, const DesiredPattern& desired,
                                  const Scene& scene, const Grids& grids) {
    const SceneTables tables(scene, grids);
    const Eigen::VectorXcd t = tables.responses(dv.x, dv.s);
    const Eigen::Index l_count = desired.d.cols();
    Eigen::MatrixXd psi(desired.d.rows(), l_count);
    for (Eigen::Index kl = 0; kl < t.size(); ++kl) {
        psi(kl / l_count, kl % l_count) =
            t[kl] == cplx(0.0, 0.0) ? 0.0 : std::arg(t[kl]);
    }
    return psi;
}

Eigen::VectorXcd solve_waveform(const Eigen::MatrixXd& psi, const DesignVariables& dv,
                                const DesiredPattern& desired, const Scene& scene,
                                const Grids& grids, const OptimConfig& cfg) {
    cfg.validate();
    const SceneTables tables(scene, grids);
    const Eigen::VectorXcd targets = detail::lift_targets(desired.d, psi);
    const FreqBlockSystem sys = tables.assemble_system(dv.x, targets, desired.w);
    const double cap = scene.power * scene.num_samples();
    return solve_power_constrained(sys, cap, cfg.solve_options()).s;
}

Eigen::VectorXcd update_ris_phases(const DesignVariables& dv, const Eigen::MatrixXd& psi,
                                   const DesiredPattern& desired, const Scene& scene,
                                   const Grids& grids, int sweeps) {
    const SceneTables tables(scene, grids);
    const Eigen::VectorXcd targets = detail::lift_targets(desired.d, psi);
    const RowMajorXcd b = tables.element_responses(dv.s);
    Eigen::VectorXcd x = dv.x;
    Eigen::VectorXcd t = b * x;
    detail::ris_phase_sweeps(b, targets, desired.w, sweeps, x, t);
    return x;
}

namespace {

std::pair<DesignVariables, ObjectiveTrace> run_bcd_impl(const SceneTables& tables,
                                                        Eigen::VectorXcd x_init,
                                                        const Eigen::VectorXcd* s_init,
                                                        const DesiredPattern& desired,
                                                        const OptimConfig& cfg) {
    cfg.validate();
    const Scene& scene = tables.scene();
    const SolveOptions opts = cfg.solve_options();
    const double cap = scene.power * scene.num_samples();

    DesignVariables dv;
    dv.x = std::move(x_init);
    for (Eigen::Index i = 0; i < dv.x.size(); ++i) {
        const double mag = std::abs(dv.x[i]);
        dv.x[i] = mag > 0.0 ? dv.x[i] / mag : cplx(1.0, 0.0);
    }

    if (s_init != nullptr) {
        dv.s = *s_init;
        const double norm_sq = dv.s.squaredNorm();
        if (norm_sq > cap) dv.s *= std::sqrt(cap / norm_sq);
    } else {
        // Unconstrained least squares against the unlifted targets, projected
        // onto the power ball.
        const Eigen::VectorXcd targets0 =
            detail::lift_targets(desired.d, Eigen::MatrixXd::Zero(desired.d.rows(),
                                                                  desired.d.cols()));
        const FreqBlockSystem sys0 = tables.assemble_system(dv.x, targets0, desired.w);
        dv.s = solve_unconstrained(sys0, opts);
        const double norm_sq = dv.s.squaredNorm();
        if (norm_sq > cap) dv.s *= std::sqrt(cap / norm_sq);
    }

    Eigen::VectorXcd t = tables.responses(dv.x, dv.s);
    double objective = detail::true_objective(desired.d, t, desired.w);

    ObjectiveTrace trace;
    trace.objectives.push_back(objective);

    for (int iter = 1; iter <= cfg.max_outer_iters; ++iter) {
        // Auxiliary phases, then the waveform block.
        Eigen::VectorXcd targets = detail::phase_align(desired.d, t);
        const FreqBlockSystem sys = tables.assemble_system(dv.x, targets, desired.w);
        dv.s = solve_power_constrained(sys, cap, opts).s;
        t = tables.responses(dv.x, dv.s);

        // Auxiliary phases again, then the RIS block.
        targets = detail::phase_align(desired.d, t);
        const RowMajorXcd b = tables.element_responses(dv.s);
        detail::ris_phase_sweeps(b, targets, desired.w, cfg.x_inner_sweeps, dv.x, t);

        t = tables.responses(dv.x, dv.s);
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
    return {std::move(dv), std::move(trace)};
}

}  // namespace

std::pair<DesignVariables, ObjectiveTrace> run_bcd(const DesiredPattern& desired,
                                                   const Scene& scene, const Grids& grids,
                                                   const OptimConfig& cfg) {
    const SceneTables tables(scene, grids);
    return run_bcd_impl(tables, detail::random_phases(scene.num_elements(), cfg.seed), nullptr,
                        desired, cfg);
}

std::pair<DesignVariables, ObjectiveTrace> run_bcd(const DesignVariables& init,
                                                   const DesiredPattern& desired,
                                                   const Scene& scene, const Grids& grids,
                                                   const OptimConfig& cfg) {
    const SceneTables tables(scene, grids);
    return run_bcd_impl(tables, init.x, &init.s, desired, cfg);
}

}  // namespace risdfrc
