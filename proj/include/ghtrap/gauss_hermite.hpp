#pragma once

#include "ghtrap/quadrature_rule.hpp"

namespace ghtrap {

inline constexpr int kMaxGaussHermitePoints = 2000;

/// n-point Gauss-Hermite rule for the standard normal density: nodes are the
/// zeros of H_n, weights 1 / [H_n'(xi_j)]^2 = 1 / (n H_{n-1}(xi_j)^2).
///
/// Initial guesses are the eigenvalues of the symmetric tridiagonal Jacobi
/// matrix (zero diagonal, off-diagonals sqrt(1), ..., sqrt(n-1)); each is
/// then polished by Newton's method on H_n. Weights are formed in log space so
/// that log_weights is exact even where weights underflow. The node set is
/// symmetrised afterwards (the middle node of an odd rule is exactly 0).
///
/// Throws std::invalid_argument for n outside [1, 2000] and NumericError if
/// Newton fails to converge within 200 iterations.
QuadratureRule gh_rule(int n);

} // namespace ghtrap
