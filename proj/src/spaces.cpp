#include "ghtrap/spaces.hpp"

#include "ghtrap/gauss_hermite.hpp"
#include "ghtrap/quadrature_rule.hpp"
#include "ghtrap/special.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace ghtrap {

double r_alpha(int alpha, int k)
{
    if (alpha < 1)
        throw std::invalid_argument("r_alpha requires alpha >= 1");
    if (k < 0)
        throw std::invalid_argument("r_alpha requires k >= 0");
    if (k == 0)
        return 1.0;
    double sum = 0.0;
    double falling = 1.0; // beta_tau(k) = k (k-1) ... (k-tau+1)
    for (int tau = 0; tau <= alpha && tau <= k; ++tau)
    {
        if (tau > 0)
            falling *= static_cast<double>(k - tau + 1);
        sum += falling;
    }
    return 1.0 / sum;
}

double r_alpha_scaled(int alpha, int k)
{
    return r_alpha(alpha, k) * std::pow(static_cast<double>(k), alpha);
}

double integrate_window(const std::function<double(double)>& g, double abs_tol, double rel_tol)
{
    using boost::math::quadrature::gauss_kronrod;
    static constexpr std::array<double, 13> breaks{-kGaussianWindow, -20.0, -10.0, -6.0, -3.0, -1.0, 0.0,
                                                   1.0, 3.0, 6.0, 10.0, 20.0, kGaussianWindow};
    CompensatedSum total;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    {
        double err = 0.0;
        double l1 = 0.0;
        const double v = gauss_kronrod<double, 31>::integrate(g, breaks[i], breaks[i + 1], 25, rel_tol,
                                                              &err, &l1);
        if (!std::isfinite(v))
            throw NumericError("adaptive quadrature produced a non-finite value on [" +
                               std::to_string(breaks[i]) + ", " + std::to_string(breaks[i + 1]) + "]");
        if (err > std::max(abs_tol, 1e3 * rel_tol * l1))
            throw NumericError("adaptive quadrature did not reach tolerance on [" +
                               std::to_string(breaks[i]) + ", " + std::to_string(breaks[i + 1]) + "]");
        total.add(v);
    }
    return total.value();
}

namespace {

void require_finite(double v, double x)
{
    if (!std::isfinite(v))
        throw NumericError("integrand is not finite at x = " + std::to_string(x));
}

CoeffVector project_coeffs(const Integrand& f, int K, int m)
{
    const QuadratureRule rule = gh_rule(m);
    std::vector<CompensatedSum> acc(K + 1);
    std::vector<double> seq(K + 1);
    for (std::size_t j = 0; j < rule.size(); ++j)
    {
        const double x = rule.nodes[j];
        const double fx = f(x);
        require_finite(fx, x);
        if (fx == 0.0)
            continue;
        // w_j f(x_j) H_k(x_j) = [w_j e^{x^2/4} f(x_j)] [H_k(x_j) e^{-x^2/4}]
        const double folded =
            std::copysign(std::exp(rule.log_weights[j] + 0.25 * x * x + std::log(std::abs(fx))), fx);
        hermite_scaled_sequence(x, seq);
        for (int k = 0; k <= K; ++k)
            acc[k].add(folded * seq[k]);
    }
    CoeffVector out;
    out.K = K;
    out.method = CoeffMethod::GaussHermiteProjection;
    out.coeffs.resize(K + 1);
    for (int k = 0; k <= K; ++k)
        out.coeffs[k] = acc[k].value();
    return out;
}

double adaptive_coeff(const Integrand& f, int k)
{
    return integrate_window([&f, k](double x) {
        const double fx = f(x);
        require_finite(fx, x);
        return fx * hermite_eval_scaled(k, x) * std::exp(-0.25 * x * x) * constants::inv_sqrt_2pi;
    });
}

} // namespace

double hermite_coeff(const Integrand& f, int k, CoeffMethod method)
{
    if (k < 0)
        throw std::invalid_argument("hermite_coeff requires k >= 0");
    if (method == CoeffMethod::AdaptiveQuadrature)
        return adaptive_coeff(f, k);
    return project_coeffs(f, k, std::max(64, 2 * k)).coeffs[k];
}

CoeffVector hermite_coeffs(const Integrand& f, int K, CoeffMethod method)
{
    if (K < 0)
        throw std::invalid_argument("hermite_coeffs requires K >= 0");
    if (method == CoeffMethod::GaussHermiteProjection)
        return project_coeffs(f, K, std::max(64, 2 * K));
    CoeffVector out;
    out.K = K;
    out.method = method;
    out.coeffs.resize(K + 1);
    for (int k = 0; k <= K; ++k)
        out.coeffs[k] = adaptive_coeff(f, k);
    return out;
}

double l2rho_norm_squared(const std::function<double(double)>& g, double abs_tol, double rel_tol)
{
    return integrate_window(
        [&g](double x) {
            const double v = g(x);
            require_finite(v, x);
            const double rho = gaussian_weight(x);
            return rho == 0.0 ? 0.0 : v * v * rho;
        },
        abs_tol, rel_tol);
}

double sobolev_norm(const Integrand& f, int alpha)
{
    if (alpha < 1)
        throw std::invalid_argument("sobolev_norm requires alpha >= 1");
    if (!f.finite_differences_allowed())
        for (int tau = 1; tau <= alpha; ++tau)
            if (!f.has_derivative(tau))
                throw std::invalid_argument("sobolev_norm: '" + f.label() + "' lacks derivative " +
                                            std::to_string(tau) +
                                            " and finite differences are not enabled");
    double sum = 0.0;
    for (int tau = 0; tau <= alpha; ++tau)
    {
        const auto d = [&f, tau](double x) { return f.derivative(tau, x); };
        if (tau == 0 || f.has_derivative(tau))
            sum += l2rho_norm_squared(d);
        else // difference quotients carry noise near eps^{2/3}
            sum += l2rho_norm_squared(d, 1e-8, 1e-8);
    }
    return std::sqrt(sum);
}

double hermite_space_norm(const CoeffVector& coeffs, int alpha)
{
    // plain accumulation of nonnegative terms keeps the result nondecreasing in K
    double acc = 0.0;
    for (int k = 0; k <= coeffs.K; ++k)
    {
        const double c = coeffs.coeffs[k];
        acc += c * c / r_alpha(alpha, k);
    }
    return std::sqrt(acc);
}

double hermite_space_norm(const Integrand& f, int alpha, int K)
{
    if (K < 1)
        throw std::invalid_argument("hermite_space_norm requires K >= 1");
    // each fhat(k) uses the rule size hermite_coeff would pick for k alone, so
    // raising K only appends terms and never perturbs the earlier ones
    CoeffVector coeffs = project_coeffs(f, std::min(K, 32), 64);
    coeffs.K = K;
    for (int k = 33; k <= K; ++k)
        coeffs.coeffs.push_back(project_coeffs(f, k, 2 * k).coeffs[k]);
    return hermite_space_norm(coeffs, alpha);
}

double hermite_space_tail_estimate(const Integrand& f, int alpha, const CoeffVector& coeffs)
{
    double partial = 0.0;
    for (double c : coeffs.coeffs)
        partial += c * c;
    const double remainder = std::max(0.0, l2rho_norm_squared([&f](double x) { return f(x); }) - partial);
    return remainder / r_alpha(alpha, coeffs.K);
}

double coeff_identity_residual(const Integrand& f, int k, CoeffMethod method)
{
    if (k < 0)
        throw std::invalid_argument("coeff_identity_residual requires k >= 0");
    if (!f.has_derivative(1) && !f.finite_differences_allowed())
        throw std::invalid_argument("coeff_identity_residual: '" + f.label() + "' has no derivative");
    const Integrand derivative(f.label() + "'", [&f](double x) { return f.derivative(1, x); }, 1);
    const double lhs = hermite_coeff(derivative, k, method);
    const double rhs = std::sqrt(static_cast<double>(k + 1)) * hermite_coeff(f, k + 1, method);
    return std::abs(lhs - rhs);
}

} // namespace ghtrap
