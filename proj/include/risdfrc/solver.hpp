// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.
//
// Norm-ball constrained least squares for the waveform block:
//
//     min_s sum_{kl} w_{kl} |d_{kl} - c_{kl}^H s|^2   s.t.  ||s||^2 <= cap,
//
// solved through the normal equations (Gram + lambda I) s = rhs with lambda=0
// when the unconstrained solution is feasible, and otherwise lambda > 0 found
// by bisection so that ||s||^2 meets the cap from below.

#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "risdfrc/response.hpp"

namespace risdfrc {

enum class WaveformSolver {
    kAuto,      // block-spectral when frequencies are orthogonal, else dense/CG by size
    kDense,     // eigendecomposition of the full Gram matrix
    kBlockDiag, // per-frequency eigendecompositions (requires orthogonal e(f_k))
    kConjGrad,  // matrix-free conjugate gradients on (Gram + lambda I)
};

struct SolveOptions {
    WaveformSolver solver = WaveformSolver::kAuto;
    double bisect_tol = 1e-10;   // relative tolerance on ||s||^2 vs the cap
    int bisect_max_iters = 300;
    double cg_tol = 1e-8;        // relative residual
    int cg_max_iters = 5000;
    int dense_dim_limit = 2048;  // auto: largest dimension solved densely
};

struct WaveformSolution {
    Eigen::VectorXcd s;
    double lambda = 0.0;
    bool constraint_active = false;
    int bisect_iters = 0;
};

/// Thrown when the lambda bisection fails to converge; carries the bracket.
class BisectionError : public std::runtime_error {
  public:
    BisectionError(double lo, double hi, const std::string& what)
        : std::runtime_error(what), lambda_lo(lo), lambda_hi(hi) {}
    double lambda_lo;
    double lambda_hi;
};

/// Minimum-norm unconstrained least-squares solution (lambda = 0).
Eigen::VectorXcd solve_unconstrained(const FreqBlockSystem& sys, const SolveOptions& opts = {});

/// Power-constrained solve; cap is the bound on ||s||^2 (i.e. N * P).
WaveformSolution solve_power_constrained(const FreqBlockSystem& sys, double cap,
                                         const SolveOptions& opts = {});

/// Conjugate gradients on (Gram + lambda I) s = rhs; exposed for testing.
Eigen::VectorXcd conjugate_gradient(const FreqBlockSystem& sys, const Eigen::VectorXcd& rhs,
                                    double lambda, double rel_tol, int max_iters,
                                    const Eigen::VectorXcd* warm_start = nullptr);

}  // namespace risdfrc
