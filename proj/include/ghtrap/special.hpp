#pragma once

/**
 * @file special.hpp
 * @brief Probabilist's Hermite polynomials and Gaussian special functions.
 *
 * All Hermite polynomials here are normalised to unit norm in L^2 of the
 * standard normal density rho(x) = exp(-x^2/2)/sqrt(2 pi), i.e.
 *
 *     H_0 = 1,  H_1 = x,
 *     H_{k+1}(x) = (x H_k(x) - sqrt(k) H_{k-1}(x)) / sqrt(k+1).
 *
 * With this normalisation H_k' = sqrt(k) H_{k-1} and |H_k(x)| e^{-x^2/4} <= 1
 * for all real x, which is what makes the scaled evaluator overflow-free.
 */

#include <cstddef>
#include <span>
#include <vector>

namespace ghtrap {

/// H_k(x) together with H_{k-1}(x), the latter reused for derivatives.
struct HermiteEval
{
    int k = 0;
    double value = 1.0;
    double value_prev = 0.0;
};

/// Result of a log-magnitude evaluation: value = sign * exp(log_abs).
struct LogMagnitude
{
    double log_abs = 0.0;
    int sign = 1;
};

/// H_k(x) by the orthonormal recurrence. Overflows to +-inf for very large
/// k x^2; callers in that regime should use hermite_eval_scaled.
double hermite_eval(int k, double x);

/// H_k(x) and H_{k-1}(x) from one recurrence pass.
HermiteEval hermite_eval_pair(int k, double x);

/// H_k(x) * exp(-x^2/4). Bounded by 1 in magnitude for every k and x.
double hermite_eval_scaled(int k, double x);

/// log|H_k(x)| and its sign, with internal rescaling so that any k is safe.
/// log_abs is -inf at an exact zero.
LogMagnitude hermite_log_abs(int k, double x);

/// Ratio H_k(x) / H_{k-1}(x) for k >= 1, free of overflow.
double hermite_ratio(int k, double x);

/// H_k'(x) = sqrt(k) H_{k-1}(x). Throws std::invalid_argument for k < 1.
double hermite_deriv(int k, double x);

/// Fills out[k] = H_k(x) exp(-x^2/4) for k = 0 .. out.size()-1.
void hermite_scaled_sequence(double x, std::span<double> out);

/// rho(x) = exp(-x^2/2) / sqrt(2 pi).
double gaussian_weight(double x);

/// E|X|^p for X ~ N(0,1): 2^{p/2} Gamma((p+1)/2) / sqrt(pi). Requires p > 0.
double gaussian_abs_moment(double p);

/// erf and erfc; Kummer-form Maclaurin series for |x| < 3, continued fraction
/// for erfc beyond. Absolute accuracy ~1e-16, relative accuracy of erfc kept
/// in the tail.
double erf(double x);
double erfc(double x);

/// Riemann zeta for s > 1: direct sum plus Euler-Maclaurin tail.
double riemann_zeta(double s);

/// Neumaier-compensated running sum.
class CompensatedSum
{
public:
    void add(double v) noexcept;
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values);

namespace constants {
inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double inv_sqrt_2pi = 0.398942280401432677939946059934381868;
inline constexpr double sqrt_pi = 1.77245385090551602729816748334114518;
} // namespace constants

} // namespace ghtrap
