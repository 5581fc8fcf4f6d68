// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.

#include "risdfrc/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace risdfrc {

namespace {

// Nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix;
// weights are mu0 times the squared first components of the eigenvectors.
QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                            double mu0) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        jacobi(i, i) = diag[i];
        if (i + 1 < n) {
            jacobi(i, i + 1) = offdiag[i];
            jacobi(i + 1, i) = offdiag[i];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("quadrature: Jacobi eigendecomposition failed");
    }
    QuadratureRule rule;
    rule.nodes = eig.eigenvalues();
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double first = eig.eigenvectors()(0, i);
        rule.weights[i] = mu0 * first * first;
    }
    return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("quadrature: order must be >= 1");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd offdiag(n > 1 ? n - 1 : 0);
    for (int k = 1; k < n; ++k) {
        offdiag[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    }
    return golub_welsch(diag, offdiag, 2.0);
}

QuadratureRule gauss_legendre(int n, double a, double b) {
    QuadratureRule rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    rule.nodes = (rule.nodes.array() * half + mid).matrix();
    rule.weights *= half;
    return rule;
}

QuadratureRule gauss_laguerre(int n) {
    if (n < 1) throw std::invalid_argument("quadrature: order must be >= 1");
    Eigen::VectorXd diag(n);
    Eigen::VectorXd offdiag(n > 1 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) {
        diag[k] = 2.0 * k + 1.0;
        if (k + 1 < n) offdiag[k] = k + 1.0;
    }
    return golub_welsch(diag, offdiag, 1.0);
}

}  // namespace risdfrc
