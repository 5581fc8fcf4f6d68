// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.
//
// Block-coordinate descent for the beampattern matching problem
//
//     min_{s, x}  sum_{kl} w_{kl} (D_{kl} - B_{kl}(s, x))^2
//     s.t.        (1/N) ||s||^2 <= P,   |x_i| = 1,
//
// using the magnitude least-squares lifting: with auxiliary phases psi the
// objective becomes sum w |D e^{i psi} - t|^2 with t the complex grid
// response, and each block (psi, s, x) admits an exact update.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "risdfrc/desired.hpp"
#include "risdfrc/response.hpp"
#include "risdfrc/scene.hpp"
#include "risdfrc/solver.hpp"

namespace risdfrc {

struct OptimConfig {
    int max_outer_iters = 200;
    double rel_obj_tol = 1e-6;        // stop when the relative decrease falls below this
    double lambda_bisect_tol = 1e-10;
    int lambda_bisect_max_iters = 300;
    int x_inner_sweeps = 2;           // cyclic RIS-phase sweeps per outer iteration
    std::uint64_t seed = 1;           // initialization RNG
    WaveformSolver solver = WaveformSolver::kAuto;
    double cg_tol = 1e-8;
    int cg_max_iters = 5000;

    SolveOptions solve_options() const;
    void validate() const;
};

struct ObjectiveTrace {
    std::vector<double> objectives;  // value after init, then after each outer iteration
    double final_objective = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Weighted squared amplitude mismatch sum_{kl} w_{kl} (D_{kl} - B_{kl})^2.
double matching_objective(const DesignVariables& dv, const DesiredPattern& desired,
                          const Scene& scene, const Grids& grids);

/// Optimal auxiliary phases psi_{kl} = arg(t_{kl}) (0 when t = 0).
Eigen::MatrixXd update_aux_phases(const DesignVariables& dv, const DesiredPattern& desired,
                                  const Scene& scene, const Grids& grids);

/// Waveform block: minimizes the lifted objective over s for fixed x and
/// phases, subject to ||s||^2 <= N*P.
Eigen::VectorXcd solve_waveform(const Eigen::MatrixXd& psi, const DesignVariables& dv,
                                const DesiredPattern& desired, const Scene& scene,
                                const Grids& grids, const OptimConfig& cfg = {});

/// RIS block: cyclic per-element unit-modulus updates of the lifted objective
/// for fixed s and phases; starts from dv.x.
Eigen::VectorXcd update_ris_phases(const DesignVariables& dv, const Eigen::MatrixXd& psi,
                                   const DesiredPattern& desired, const Scene& scene,
                                   const Grids& grids, int sweeps);

/// Full block-coordinate descent from a seeded random initialization.
std::pair<DesignVariables, ObjectiveTrace> run_bcd(const DesiredPattern& desired,
                                                   const Scene& scene, const Grids& grids,
                                                   const OptimConfig& cfg);

/// Same, continuing from explicit initial design variables.
std::pair<DesignVariables, ObjectiveTrace> run_bcd(const DesignVariables& init,
                                                   const DesiredPattern& desired,
                                                   const Scene& scene, const Grids& grids,
                                                   const OptimConfig& cfg);

namespace detail {

/// Targets d_{kl} = D_{kl} exp(i psi_{kl}) flattened to k*L + l.
Eigen::VectorXcd lift_targets(const Eigen::MatrixXd& d, const Eigen::MatrixXd& psi);

/// arg(t) per grid point with arg(0) = 0.
Eigen::VectorXcd phase_align(const Eigen::MatrixXd& d, const Eigen::VectorXcd& t);

double lifted_objective(const Eigen::VectorXcd& targets, const Eigen::VectorXcd& t,
                        const Eigen::MatrixXd& w);
double true_objective(const Eigen::MatrixXd& d, const Eigen::VectorXcd& t,
                      const Eigen::MatrixXd& w);

/// In-place cyclic sweeps; t must equal b*x on entry and is kept consistent.
void ris_phase_sweeps(const RowMajorXcd& b, const Eigen::VectorXcd& targets,
                      const Eigen::MatrixXd& w, int sweeps, Eigen::VectorXcd& x,
                      Eigen::VectorXcd& t);

/// Unit-modulus vector with phases uniform in [0, 2*pi) from the seed.
Eigen::VectorXcd random_phases(int count, std::uint64_t seed);

}  // namespace detail

}  // namespace risdfrc
