// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.

#include "risdfrc/response.hpp"

#include <cmath>
#include <stdexcept>

namespace risdfrc {

cplx sample_phase(int n_one_based, double f, double bandwidth) {
    return std::polar(1.0, -2.0 * kPi * n_one_based * f / bandwidth);
}

Eigen::MatrixXcd freq_transform(const Eigen::VectorXcd& s, int block, const Eigen::VectorXd& freqs,
                                double bandwidth) {
    const int n = static_cast<int>(s.size()) / block;
    const int k_count = static_cast<int>(freqs.size());
    Eigen::MatrixXcd shat = Eigen::MatrixXcd::Zero(k_count, block);
    for (int k = 0; k < k_count; ++k) {
        for (int ns = 0; ns < n; ++ns) {
            shat.row(k) += sample_phase(ns + 1, freqs[k], bandwidth) *
                           s.segment(ns * block, block).transpose();
        }
    }
    return shat;
}

Eigen::VectorXcd FreqBlockSystem::apply(const Eigen::VectorXcd& s, double lambda) const {
    const int b = block_dim();
    const int k_count = static_cast<int>(freqs.size());
    Eigen::VectorXcd out = lambda * s;
    for (int k = 0; k < k_count; ++k) {
        // shat_k = (e_k^T kron I) s, then accumulate conj(e_k) kron (A_k shat_k).
        Eigen::VectorXcd shat = Eigen::VectorXcd::Zero(b);
        for (int ns = 0; ns < num_samples; ++ns) {
            shat += sample_phase(ns + 1, freqs[k], bandwidth) * s.segment(ns * b, b);
        }
        const Eigen::VectorXcd au = a[k] * shat;
        for (int ns = 0; ns < num_samples; ++ns) {
            out.segment(ns * b, b) += std::conj(sample_phase(ns + 1, freqs[k], bandwidth)) * au;
        }
    }
    return out;
}

Eigen::VectorXcd FreqBlockSystem::rhs() const {
    const int b = block_dim();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim());
    for (int k = 0; k < static_cast<int>(freqs.size()); ++k) {
        for (int ns = 0; ns < num_samples; ++ns) {
            out.segment(ns * b, b) += std::conj(sample_phase(ns + 1, freqs[k], bandwidth)) * y[k];
        }
    }
    return out;
}

Eigen::MatrixXcd FreqBlockSystem::dense_gram() const {
    const int b = block_dim();
    const int d = dim();
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < static_cast<int>(freqs.size()); ++k) {
        for (int nr = 0; nr < num_samples; ++nr) {
            const cplx er = std::conj(sample_phase(nr + 1, freqs[k], bandwidth));
            for (int nc = 0; nc < num_samples; ++nc) {
                const cplx factor = er * sample_phase(nc + 1, freqs[k], bandwidth);
                gram.block(nr * b, nc * b, b, b) += factor * a[k];
            }
        }
    }
    return gram;
}

bool FreqBlockSystem::freq_orthogonal(double rel_tol) const {
    const int k_count = static_cast<int>(freqs.size());
    for (int k = 0; k < k_count; ++k) {
        for (int k2 = k + 1; k2 < k_count; ++k2) {
            cplx dot(0.0, 0.0);
            for (int ns = 0; ns < num_samples; ++ns) {
                dot += std::conj(sample_phase(ns + 1, freqs[k], bandwidth)) *
                       sample_phase(ns + 1, freqs[k2], bandwidth);
            }
            if (std::abs(dot) > rel_tol * num_samples) return false;
        }
    }
    return true;
}

SceneTables::SceneTables(const Scene& scene, const Grids& grids) : scene_(scene), grids_(grids) {
    scene_.validate();
    grids_.validate(scene_.signal);
    k_count_ = grids_.num_freqs();
    l_count_ = grids_.num_angles();
    m_count_ = scene_.num_elements();
    j_count_ = scene_.num_sources();
    response_scale_ = 1.0 / (scene_.signal.bandwidth * std::sqrt(scene_.signal.pulse_duration));

    g_.resize(k_count_);
    for (int k = 0; k < k_count_; ++k) {
        const double f_rf = grids_.freqs[k] + scene_.signal.carrier;
        g_[k].resize(m_count_, j_count_);
        for (int i = 0; i < m_count_; ++i) {
            for (int j = 0; j < j_count_; ++j) g_[k](i, j) = source_ris_gain(f_rf, j, i, scene_);
        }
    }

    phi_.resize(static_cast<Eigen::Index>(k_count_) * l_count_, m_count_);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < k_count_; ++k) {
        const double f_rf = grids_.freqs[k] + scene_.signal.carrier;
        for (int l = 0; l < l_count_; ++l) {
            const Eigen::Vector3d u = propagation_dir(grids_.theta[l], grids_.phi[l]);
            const double gamma = scene_.ris_pattern.amplitude(u.z());
            for (int i = 0; i < m_count_; ++i) {
                const double tau =
                    -scene_.ris.element_position(i).dot(u) / kSpeedOfLight;
                // conj(v_i) * Gamma_i
                phi_(static_cast<Eigen::Index>(k) * l_count_ + l, i) =
                    std::polar(gamma, -2.0 * kPi * f_rf * tau);
            }
        }
    }
}

Eigen::VectorXcd SceneTables::responses(const Eigen::VectorXcd& x,
                                        const Eigen::VectorXcd& s) const {
    const Eigen::MatrixXcd shat = freq_transform(s, j_count_, grids_.freqs, scene_.signal.bandwidth);
    Eigen::VectorXcd t(num_points());
#pragma omp parallel for schedule(static)
    for (int k = 0; k < k_count_; ++k) {
        const Eigen::VectorXcd q = g_[k] * shat.row(k).transpose();  // M-vector
        for (int l = 0; l < l_count_; ++l) {
            const Eigen::Index kl = static_cast<Eigen::Index>(k) * l_count_ + l;
            cplx acc(0.0, 0.0);
            for (int i = 0; i < m_count_; ++i) acc += phi_(kl, i) * x[i] * q[i];
            t[kl] = response_scale_ * acc;
        }
    }
    return t;
}

RowMajorXcd SceneTables::element_responses(const Eigen::VectorXcd& s) const {
    const Eigen::MatrixXcd shat = freq_transform(s, j_count_, grids_.freqs, scene_.signal.bandwidth);
    RowMajorXcd b(num_points(), m_count_);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < k_count_; ++k) {
        const Eigen::VectorXcd q = response_scale_ * (g_[k] * shat.row(k).transpose());
        for (int l = 0; l < l_count_; ++l) {
            const Eigen::Index kl = static_cast<Eigen::Index>(k) * l_count_ + l;
            for (int i = 0; i < m_count_; ++i) b(kl, i) = phi_(kl, i) * q[i];
        }
    }
    return b;
}

FreqBlockSystem SceneTables::assemble_system(const Eigen::VectorXcd& x,
                                             const Eigen::VectorXcd& targets,
                                             const Eigen::MatrixXd& weights) const {
    if (targets.size() != num_points()) {
        throw std::invalid_argument("assemble_system: targets size mismatch");
    }
    FreqBlockSystem sys;
    sys.freqs = grids_.freqs;
    sys.num_samples = scene_.num_samples();
    sys.bandwidth = scene_.signal.bandwidth;
    sys.pulse_duration = scene_.signal.pulse_duration;
    sys.a.resize(k_count_);
    sys.y.resize(k_count_);

    const double gram_scale = response_scale_ * response_scale_;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < k_count_; ++k) {
        Eigen::MatrixXcd ak = Eigen::MatrixXcd::Zero(j_count_, j_count_);
        Eigen::VectorXcd yk = Eigen::VectorXcd::Zero(j_count_);
        Eigen::VectorXcd gamma_conj(j_count_);
        for (int l = 0; l < l_count_; ++l) {
            const Eigen::Index kl = static_cast<Eigen::Index>(k) * l_count_ + l;
            // conj(gamma^H) with gamma^H_j = sum_i phi_{kl,i} x_i G_k(i,j)
            for (int j = 0; j < j_count_; ++j) {
                cplx acc(0.0, 0.0);
                for (int i = 0; i < m_count_; ++i) acc += phi_(kl, i) * x[i] * g_[k](i, j);
                gamma_conj[j] = std::conj(acc);
            }
            const double wkl = weights(k, l);
            ak.noalias() += wkl * (gamma_conj * gamma_conj.adjoint());
            yk.noalias() += (wkl * targets[kl]) * gamma_conj;
        }
        sys.a[k] = gram_scale * ak;
        sys.y[k] = response_scale_ * yk;
    }
    return sys;
}

void MimoScenario::validate() const {
    array.validate();
    signal.validate();
    if (!(power > 0.0)) throw std::invalid_argument("mimo scenario: power budget must be > 0");
}

MimoTables::MimoTables(const MimoScenario& scene, const Grids& grids)
    : scene_(scene), grids_(grids) {
    scene_.validate();
    grids_.validate(scene_.signal);
    k_count_ = grids_.num_freqs();
    l_count_ = grids_.num_angles();
    m_count_ = scene_.num_antennas();
    response_scale_ = 1.0 / (scene_.signal.bandwidth * std::sqrt(scene_.signal.pulse_duration));

    phi_.resize(static_cast<Eigen::Index>(k_count_) * l_count_, m_count_);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < k_count_; ++k) {
        const double f_rf = grids_.freqs[k] + scene_.signal.carrier;
        for (int l = 0; l < l_count_; ++l) {
            const Eigen::Vector3d u = propagation_dir(grids_.theta[l], grids_.phi[l]);
            const double gamma = scene_.pattern.amplitude(u.z());
            for (int i = 0; i < m_count_; ++i) {
                const double tau = -scene_.array.element_position(i).dot(u) / kSpeedOfLight;
                phi_(static_cast<Eigen::Index>(k) * l_count_ + l, i) =
                    std::polar(gamma, -2.0 * kPi * f_rf * tau);
            }
        }
    }
}

Eigen::VectorXcd MimoTables::responses(const Eigen::VectorXcd& s) const {
    const Eigen::MatrixXcd shat = freq_transform(s, m_count_, grids_.freqs, scene_.signal.bandwidth);
    Eigen::VectorXcd t(static_cast<Eigen::Index>(k_count_) * l_count_);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < k_count_; ++k) {
        for (int l = 0; l < l_count_; ++l) {
            const Eigen::Index kl = static_cast<Eigen::Index>(k) * l_count_ + l;
            cplx acc(0.0, 0.0);
            for (int i = 0; i < m_count_; ++i) acc += phi_(kl, i) * shat(k, i);
            t[kl] = response_scale_ * acc;
        }
    }
    return t;
}

FreqBlockSystem MimoTables::assemble_system(const Eigen::VectorXcd& targets,
                                            const Eigen::MatrixXd& weights) const {
    if (targets.size() != static_cast<Eigen::Index>(k_count_) * l_count_) {
        throw std::invalid_argument("assemble_system: targets size mismatch");
    }
    FreqBlockSystem sys;
    sys.freqs = grids_.freqs;
    sys.num_samples = scene_.signal.num_samples();
    sys.bandwidth = scene_.signal.bandwidth;
    sys.pulse_duration = scene_.signal.pulse_duration;
    sys.a.resize(k_count_);
    sys.y.resize(k_count_);

    const double gram_scale = response_scale_ * response_scale_;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < k_count_; ++k) {
        Eigen::MatrixXcd ak = Eigen::MatrixXcd::Zero(m_count_, m_count_);
        Eigen::VectorXcd yk = Eigen::VectorXcd::Zero(m_count_);
        for (int l = 0; l < l_count_; ++l) {
            const Eigen::Index kl = static_cast<Eigen::Index>(k) * l_count_ + l;
            const Eigen::VectorXcd gamma_conj = phi_.row(kl).conjugate().transpose();
            const double wkl = weights(k, l);
            ak.selfadjointView<Eigen::Lower>().rankUpdate(gamma_conj, wkl);
            yk.noalias() += (wkl * targets[kl]) * gamma_conj;
        }
        sys.a[k] = gram_scale * Eigen::MatrixXcd(ak.selfadjointView<Eigen::Lower>());
        sys.y[k] = response_scale_ * yk;
    }
    return sys;
}

}  // namespace risdfrc
