#pragma once

#include "ghtrap/quadrature_rule.hpp"

#include <span>
#include <vector>

namespace ghtrap {

/// Worst-case error of a rule in the Hermite space of smoothness alpha,
/// truncated to modes k <= K:
///
///     wce^2 = (1 - sum_j w_j)^2 + sum_{k=1}^{K} r_alpha(k) (sum_j w_j H_k(x_j))^2
///
/// (the integral of H_k against rho is 1 for k = 0 and 0 otherwise).
struct WceEstimate
{
    double value = 0.0;
    int K = 0;
    /// r_alpha(K+1) * (sum_j |w_j| e^{x_j^2/4})^2: a bound on any single
    /// omitted term, since |H_k(x)| e^{-x^2/4} <= 1. Reported, not added.
    double tail_bound = 0.0;
    int alpha = 1;
};

/// Default truncation max(10^4, 8n).
int default_wce_truncation(std::size_t n);

/// Per-mode defects D_k = sum_j w_j H_k(x_j) - delta_{k0} for k = 0..K.
/// Independent of alpha; wce^2 = sum_k r_alpha(k) D_k^2.
std::vector<double> rule_hermite_defects(const QuadratureRule& rule, int K);

WceEstimate wce_series(const QuadratureRule& rule, int alpha, int K);
WceEstimate wce_series(const QuadratureRule& rule, int alpha);

/// Lower-bound certificate from the piecewise bump
///     h(x) = u^alpha (1-u)^alpha,  u = (x - x_j)/(x_{j+1} - x_j),  x in [x_j, x_{j+1}],
/// which vanishes at every node, so Q(h) = 0 for any weights and
/// wce >= I(h) / ||h||_alpha.
struct BumpCertificate
{
    double I_h = 0.0;
    double norm_h = 0.0;
    double ratio = 0.0;
    int alpha = 1;
    std::size_t n = 0;
};

BumpCertificate bump_certificate(std::span<const double> nodes, int alpha);

/// I(f)/||f||_alpha for the single bump f(x) = (x/d)^alpha (1 - x/d)^alpha on
/// [0, d]; certifies the error of any rule with no node in (0, d).
double gap_certificate(double delta, int alpha);

/// S_{alpha,tau} = int_0^1 |d^tau/dx^tau (x^alpha (1-x)^alpha)|^2 dx, from the
/// alternating double sum evaluated in exact rational arithmetic.
double S_alpha_tau(int alpha, int tau);

/// c_alpha = (alpha!)^2 / ((2 alpha + 1)! (2 pi)^{1/4}) (sum_tau S_{alpha,tau})^{-1/2}.
double general_lower_constant(int alpha);

/// C_alpha = c_alpha pi^{1/4} (erf(13/3) - erf(3)) / 2^{(alpha+6)/2}, so that
/// wce(GH_n) >= C_alpha n^{-alpha/2} for every n >= 2.
double explicit_lower_constant(int alpha);

/// 2 sqrt(zeta(2 alpha)) / pi^alpha.
double trap_theory_constant(int alpha);

} // namespace ghtrap
