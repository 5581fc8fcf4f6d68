// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.

#include "risdfrc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

namespace risdfrc {

namespace {

// Spectral form of the normal equations: mu_i >= 0 and beta_i = <u_i, rhs>,
// with reconstruct() mapping filtered coefficients beta_i/(mu_i + lambda)
// back to the waveform vector.
struct SpectralSystem {
    Eigen::VectorXd mu;
    Eigen::VectorXcd beta;
    std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> reconstruct;

    double norm_sq(double lambda) const {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < mu.size(); ++i) {
            const double denom = mu[i] + lambda;
            if (denom > 0.0) acc += std::norm(beta[i]) / (denom * denom);
        }
        return acc;
    }

    Eigen::VectorXcd solve(double lambda) const {
        Eigen::VectorXcd coeff(mu.size());
        for (Eigen::Index i = 0; i < mu.size(); ++i) {
            const double denom = mu[i] + lambda;
            coeff[i] = denom > 0.0 ? beta[i] / denom : cplx(0.0, 0.0);
        }
        return reconstruct(coeff);
    }

    // Minimum-norm solution: drop directions below the numerical rank cutoff.
    Eigen::VectorXcd solve_minimum_norm() const {
        const double cutoff = mu.size() ? mu.maxCoeff() * 1e-13 : 0.0;
        Eigen::VectorXcd coeff(mu.size());
        for (Eigen::Index i = 0; i < mu.size(); ++i) {
            coeff[i] = mu[i] > cutoff ? beta[i] / mu[i] : cplx(0.0, 0.0);
        }
        return reconstruct(coeff);
    }

    double norm_sq_minimum_norm() const {
        const double cutoff = mu.size() ? mu.maxCoeff() * 1e-13 : 0.0;
        double acc = 0.0;
        for (Eigen::Index i = 0; i < mu.size(); ++i) {
            if (mu[i] > cutoff) acc += std::norm(beta[i]) / (mu[i] * mu[i]);
        }
        return acc;
    }
};

SpectralSystem spectral_dense(const FreqBlockSystem& sys) {
    const Eigen::MatrixXcd gram = sys.dense_gram();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("waveform solver: eigendecomposition failed");
    }
    SpectralSystem sp;
    sp.mu = eig.eigenvalues().cwiseMax(0.0);
    Eigen::MatrixXcd u = eig.eigenvectors();
    sp.beta = u.adjoint() * sys.rhs();
    sp.reconstruct = [u](const Eigen::VectorXcd& coeff) { return Eigen::VectorXcd(u * coeff); };
    return sp;
}

SpectralSystem spectral_block(const FreqBlockSystem& sys) {
    const int k_count = static_cast<int>(sys.freqs.size());
    const int b = sys.block_dim();
    const int n = sys.num_samples;
    const double root_n = std::sqrt(static_cast<double>(n));

    // In the orthonormal basis (conj(e_k)/sqrt(N)) kron u_{k,i}, the Gram is
    // block diagonal with blocks N * A_k.
    auto evecs = std::make_shared<std::vector<Eigen::MatrixXcd>>(k_count);
    SpectralSystem sp;
    sp.mu.resize(static_cast<Eigen::Index>(k_count) * b);
    sp.beta.resize(static_cast<Eigen::Index>(k_count) * b);
    for (int k = 0; k < k_count; ++k) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sys.a[k]);
        if (eig.info() != Eigen::Success) {
            throw std::runtime_error("waveform solver: block eigendecomposition failed");
        }
        (*evecs)[k] = eig.eigenvectors();
        sp.mu.segment(k * b, b) = n * eig.eigenvalues().cwiseMax(0.0);
        sp.beta.segment(k * b, b) = root_n * ((*evecs)[k].adjoint() * sys.y[k]);
    }

    const Eigen::VectorXd freqs = sys.freqs;
    const double bandwidth = sys.bandwidth;
    sp.reconstruct = [evecs, freqs, bandwidth, k_count, b, n,
                      root_n](const Eigen::VectorXcd& coeff) {
        Eigen::VectorXcd s = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n) * b);
        for (int k = 0; k < k_count; ++k) {
            const Eigen::VectorXcd block = (*evecs)[k] * coeff.segment(k * b, b) / root_n;
            for (int ns = 0; ns < n; ++ns) {
                s.segment(ns * b, b) +=
                    std::conj(sample_phase(ns + 1, freqs[k], bandwidth)) * block;
            }
        }
        return s;
    };
    return sp;
}

WaveformSolution bisect_spectral(const SpectralSystem& sp, double cap, const SolveOptions& opts) {
    WaveformSolution out;
    if (sp.norm_sq_minimum_norm() <= cap) {
        out.s = sp.solve_minimum_norm();
        return out;
    }
    out.constraint_active = true;

    double lo = 0.0;
    double hi = 1.0;
    int doubling = 0;
    while (sp.norm_sq(hi) > cap) {
        lo = hi;
        hi *= 2.0;
        if (++doubling > 2000) {
            throw BisectionError(lo, hi, "lambda bracket expansion failed");
        }
    }

    const double lo_target = cap * (1.0 - opts.bisect_tol);
    double norm_hi = sp.norm_sq(hi);
    int iters = 0;
    while (norm_hi < lo_target) {
        if (++iters > opts.bisect_max_iters) {
            throw BisectionError(lo, hi,
                                 "lambda bisection did not converge within " +
                                     std::to_string(opts.bisect_max_iters) + " iterations");
        }
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket exhausted at double precision
        const double norm_mid = sp.norm_sq(mid);
        if (norm_mid > cap) {
            lo = mid;
        } else {
            hi = mid;
            norm_hi = norm_mid;
        }
    }
    out.lambda = hi;
    out.bisect_iters = iters;
    out.s = sp.solve(hi);
    return out;
}

WaveformSolution bisect_cg(const FreqBlockSystem& sys, double cap, const SolveOptions& opts) {
    const Eigen::VectorXcd rhs = sys.rhs();
    WaveformSolution out;
    if (rhs.squaredNorm() == 0.0) {
        out.s = Eigen::VectorXcd::Zero(sys.dim());
        return out;
    }

    Eigen::VectorXcd s =
        conjugate_gradient(sys, rhs, 0.0, opts.cg_tol, opts.cg_max_iters, nullptr);
    if (s.squaredNorm() <= cap) {
        out.s = s;
        return out;
    }
    out.constraint_active = true;

    double lo = 0.0;
    double hi = 1.0;
    int doubling = 0;
    auto solve_at = [&](double lambda) {
        s = conjugate_gradient(sys, rhs, lambda, opts.cg_tol, opts.cg_max_iters, &s);
        return s.squaredNorm();
    };
    while (solve_at(hi) > cap) {
        lo = hi;
        hi *= 2.0;
        if (++doubling > 2000) {
            throw BisectionError(lo, hi, "lambda bracket expansion failed");
        }
    }

    const double lo_target = cap * (1.0 - opts.bisect_tol);
    Eigen::VectorXcd s_hi = s;
    double norm_hi = s_hi.squaredNorm();
    int iters = 0;
    while (norm_hi < lo_target) {
        if (++iters > opts.bisect_max_iters) {
            throw BisectionError(lo, hi,
                                 "lambda bisection did not converge within " +
                                     std::to_string(opts.bisect_max_iters) + " iterations");
        }
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double norm_mid = solve_at(mid);
        if (norm_mid > cap) {
            lo = mid;
        } else {
            hi = mid;
            s_hi = s;
            norm_hi = norm_mid;
        }
    }
    out.lambda = hi;
    out.bisect_iters = iters;
    out.s = s_hi;
    return out;
}

WaveformSolver pick_solver(const FreqBlockSystem& sys, const SolveOptions& opts) {
    if (opts.solver != WaveformSolver::kAuto) return opts.solver;
    if (sys.freq_orthogonal()) return WaveformSolver::kBlockDiag;
    if (sys.dim() <= opts.dense_dim_limit) return WaveformSolver::kDense;
    return WaveformSolver::kConjGrad;
}

}  // namespace

Eigen::VectorXcd conjugate_gradient(const FreqBlockSystem& sys, const Eigen::VectorXcd& rhs,
                                    double lambda, double rel_tol, int max_iters,
                                    const Eigen::VectorXcd* warm_start) {
    Eigen::VectorXcd s =
        warm_start != nullptr ? *warm_start : Eigen::VectorXcd::Zero(sys.dim());
    Eigen::VectorXcd r = rhs - sys.apply(s, lambda);
    const double target = rel_tol * rhs.norm();
    if (r.norm() <= target) return s;

    Eigen::VectorXcd p = r;
    double rho = r.squaredNorm();
    for (int it = 0; it < max_iters; ++it) {
        const Eigen::VectorXcd ap = sys.apply(p, lambda);
        const double denom = std::real(p.dot(ap));
        if (denom <= 0.0) break;  // numerically semidefinite direction
        const double alpha = rho / denom;
        s += alpha * p;
        r -= alpha * ap;
        const double rho_next = r.squaredNorm();
        if (std::sqrt(rho_next) <= target) return s;
        p = r + (rho_next / rho) * p;
        rho = rho_next;
    }
    return s;
}

Eigen::VectorXcd solve_unconstrained(const FreqBlockSystem& sys, const SolveOptions& opts) {
    switch (pick_solver(sys, opts)) {
        case WaveformSolver::kBlockDiag:
            return spectral_block(sys).solve_minimum_norm();
        case WaveformSolver::kDense:
            return spectral_dense(sys).solve_minimum_norm();
        default:
            return conjugate_gradient(sys, sys.rhs(), 0.0, opts.cg_tol, opts.cg_max_iters);
    }
}

WaveformSolution solve_power_constrained(const FreqBlockSystem& sys, double cap,
                                         const SolveOptions& opts) {
    if (!(cap > 0.0)) throw std::invalid_argument("waveform solver: cap must be > 0");
    switch (pick_solver(sys, opts)) {
        case WaveformSolver::kBlockDiag:
            return bisect_spectral(spectral_block(sys), cap, opts);
        case WaveformSolver::kDense:
            return bisect_spectral(spectral_dense(sys), cap, opts);
        default:
            return bisect_cg(sys, cap, opts);
    }
}

}  // namespace risdfrc
