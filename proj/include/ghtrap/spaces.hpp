#pragma once

#include "ghtrap/integrand.hpp"

#include <functional>
#include <vector>

namespace ghtrap {

/// r_alpha(k) = 1 for k = 0, else 1 / sum_{tau=0}^{alpha} k!/(k-tau)!
/// (terms with tau > k vanish). Falling factorials are formed as products,
/// so large k simply drives r to 0 instead of overflowing a factorial.
double r_alpha(int alpha, int k);

/// r_alpha(k) * k^alpha, which tends to 1 as k grows.
double r_alpha_scaled(int alpha, int k);

enum class CoeffMethod
{
    GaussHermiteProjection,
    AdaptiveQuadrature,
};

struct CoeffVector
{
    std::vector<double> coeffs; // fhat(0) .. fhat(K)
    int K = 0;
    CoeffMethod method = CoeffMethod::GaussHermiteProjection;
};

/// Half-width of the window used for every adaptive integral against rho.
inline constexpr double kGaussianWindow = 40.0;

/// int_{-40}^{40} g(x) dx by adaptive Gauss-Kronrod, split at 0 and a few
/// interior points so that kinks at the origin do not slow convergence.
double integrate_window(const std::function<double(double)>& g, double abs_tol = 1e-13,
                        double rel_tol = 1e-12);

/// fhat(k) = int f H_k rho. Projection uses an m-point Gauss-Hermite rule with
/// m = max(64, 2k); adaptive integrates on [-40, 40] to 1e-12 absolute.
double hermite_coeff(const Integrand& f, int k,
                     CoeffMethod method = CoeffMethod::GaussHermiteProjection);

/// fhat(0) .. fhat(K) in one pass (m = max(64, 2K) for projection).
CoeffVector hermite_coeffs(const Integrand& f, int K,
                           CoeffMethod method = CoeffMethod::GaussHermiteProjection);

/// ||g||_{L^2_rho}^2 by adaptive quadrature.
double l2rho_norm_squared(const std::function<double(double)>& g, double abs_tol = 1e-13,
                          double rel_tol = 1e-12);

/// (sum_{tau=0}^{alpha} ||f^(tau)||^2_{L^2_rho})^{1/2}. Needs analytic
/// derivatives up to alpha, or finite differences explicitly enabled on f.
double sobolev_norm(const Integrand& f, int alpha);

/// (sum_{k=0}^{K} r_alpha(k)^{-1} fhat(k)^2)^{1/2}; non-decreasing in K.
double hermite_space_norm(const Integrand& f, int alpha, int K = 200);
double hermite_space_norm(const CoeffVector& coeffs, int alpha);

/// r_alpha(K)^{-1} * (||f||^2_{L^2_rho} - sum_{k<=K} fhat(k)^2), the Bessel
/// remainder scaled to the last retained mode.
double hermite_space_tail_estimate(const Integrand& f, int alpha, const CoeffVector& coeffs);

/// |(f', H_k) - sqrt(k+1) (f, H_{k+1})|, which vanishes for f in H_1.
double coeff_identity_residual(const Integrand& f, int k,
                               CoeffMethod method = CoeffMethod::GaussHermiteProjection);

} // namespace ghtrap
