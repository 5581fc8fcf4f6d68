// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.
//
// Precomputed grid-response tables. For every grid point the far-field
// response is a bilinear form
//
//     t_{kl} = (1/(W sqrt(T))) * gamma_{kl}^H(x) * shat_k,
//
// where shat_k = sum_n e_n(f_k) s_n is the per-frequency transform of the
// waveform blocks and gamma is a J-vector (RIS, depends on x) or an
// M'-vector (fully digital array, fixed). Everything that does not depend on
// the design variables is tabulated once per (scene, grids) pair.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "risdfrc/desired.hpp"
#include "risdfrc/scene.hpp"

namespace risdfrc {

using RowMajorXcd = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// e_n(f) = exp(-2*pi*i*n*f/W) for the 1-based sample index n.
cplx sample_phase(int n_one_based, double f, double bandwidth);

/// K x B matrix with rows shat_k^T, for sample-major s with block size B.
Eigen::MatrixXcd freq_transform(const Eigen::VectorXcd& s, int block, const Eigen::VectorXd& freqs,
                                double bandwidth);

/// Per-frequency normal-equation blocks of the weighted least-squares problem
/// min_s sum_{kl} w_{kl} |d_{kl} - c_{kl}^H s|^2 with
/// c_{kl} = (1/(W sqrt(T))) conj(e(f_k)) kron conj(gamma_{kl}).
/// The stored blocks carry the 1/(W^2 T) and 1/(W sqrt(T)) scale factors, so
///   Gram = sum_k conj(e_k) e_k^T kron A_k   and   rhs = sum_k conj(e_k) kron y_k.
struct FreqBlockSystem {
    Eigen::VectorXd freqs;          // K baseband frequencies
    int num_samples = 0;            // N
    double bandwidth = 0.0;         // W
    double pulse_duration = 0.0;    // T
    std::vector<Eigen::MatrixXcd> a;  // K blocks, B x B, Hermitian PSD
    std::vector<Eigen::VectorXcd> y;  // K blocks, length B

    int block_dim() const { return a.empty() ? 0 : static_cast<int>(a[0].rows()); }
    int dim() const { return num_samples * block_dim(); }

    /// (Gram + lambda I) s, evaluated through the block structure.
    Eigen::VectorXcd apply(const Eigen::VectorXcd& s, double lambda) const;

    /// Right-hand side sum_k conj(e_k) kron y_k.
    Eigen::VectorXcd rhs() const;

    /// Dense Gram matrix (dim x dim); intended for moderate dimensions.
    Eigen::MatrixXcd dense_gram() const;

    /// True when the e(f_k) vectors are mutually orthogonal (e.g. K <= N
    /// frequencies on the -W/2 + k W/N lattice), enabling the per-frequency
    /// spectral solver.
    bool freq_orthogonal(double rel_tol = 1e-9) const;
};

/// Tables for the RIS transmitter on a fixed (scene, grids) pair.
class SceneTables {
  public:
    SceneTables(const Scene& scene, const Grids& grids);

    const Scene& scene() const { return scene_; }
    const Grids& grids() const { return grids_; }
    int num_points() const { return k_count_ * l_count_; }

    /// gamma_{kl}^H(x)_j = sum_i phi_{kl,i} x_i G_k(i,j); returned as the
    /// column vector conj(gamma^H) used in outer products.
    /// Grid responses t (flattened k*L + l) for design variables (x, s).
    Eigen::VectorXcd responses(const Eigen::VectorXcd& x, const Eigen::VectorXcd& s) const;

    /// Element responses b with t = b * x; row kl holds b_{kl,i}.
    RowMajorXcd element_responses(const Eigen::VectorXcd& s) const;

    /// Normal-equation blocks for the waveform update at fixed x, targets d
    /// (flattened K*L) and weights w.
    FreqBlockSystem assemble_system(const Eigen::VectorXcd& x, const Eigen::VectorXcd& targets,
                                    const Eigen::MatrixXd& weights) const;

  private:
    Scene scene_;
    Grids grids_;
    int k_count_, l_count_, m_count_, j_count_;
    double response_scale_;           // 1/(W sqrt(T))
    std::vector<Eigen::MatrixXcd> g_;  // K source-RIS gain matrices, M x J
    RowMajorXcd phi_;                 // (K*L) x M, conj(v) .* Gamma
};

/// Fully digital planar array sharing the RIS signal parameters.
struct MimoScenario {
    RisGeometry array;       // antenna positions (x-y plane, broadside +z)
    ElementPattern pattern;  // per-antenna pattern
    SignalParams signal;
    double power = 10.0;

    int num_antennas() const { return array.size(); }
    void validate() const;
};

/// Tables for the fully digital array: gamma_{kl} = conj(v) * Gamma is fixed.
class MimoTables {
  public:
    MimoTables(const MimoScenario& scene, const Grids& grids);

    const MimoScenario& scene() const { return scene_; }
    const Grids& grids() const { return grids_; }

    Eigen::VectorXcd responses(const Eigen::VectorXcd& s) const;
    FreqBlockSystem assemble_system(const Eigen::VectorXcd& targets,
                                    const Eigen::MatrixXd& weights) const;

  private:
    MimoScenario scene_;
    Grids grids_;
    int k_count_, l_count_, m_count_;
    double response_scale_;
    RowMajorXcd phi_;  // (K*L) x M'
};

}  // namespace risdfrc
