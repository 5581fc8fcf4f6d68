// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.
//
// Gauss quadrature rules (Golub-Welsch on the Jacobi matrices).

#pragma once

#include <Eigen/Dense>

namespace risdfrc {

struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Gauss-Laguerre rule for integrals of the form int_0^inf f(t) e^{-t} dt.
QuadratureRule gauss_laguerre(int n);

}  // namespace risdfrc
