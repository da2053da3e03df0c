#include "ghtrap/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ghtrap {

namespace {

constexpr double kRescaleAbove = 1e200;
constexpr double kRescaleFactor = 1e-200;
const double kLogRescale = 200.0 * std::log(10.0);

void require_degree(int k)
{
    if (k < 0)
        throw std::invalid_argument("Hermite degree must be non-negative, got " + std::to_string(k));
}

/// Runs the orthonormal recurrence from (h_prev, h) = (0, start) up to degree k,
/// rescaling both iterates whenever they grow past kRescaleAbove. Returns the
/// accumulated natural-log scale that has been divided out.
double run_recurrence(int k, double x, double& h_prev, double& h)
{
    double log_scale = 0.0;
    for (int j = 0; j < k; ++j)
    {
        const double next = (x * h - std::sqrt(static_cast<double>(j)) * h_prev) /
                            std::sqrt(static_cast<double>(j + 1));
        h_prev = h;
        h = next;
        if (std::abs(h) > kRescaleAbove)
        {
            h *= kRescaleFactor;
            h_prev *= kRescaleFactor;
            log_scale += kLogRescale;
        }
    }
    return log_scale;
}

} // namespace

void CompensatedSum::add(double v) noexcept
{
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
        comp_ += (sum_ - t) + v;
    else
        comp_ += (v - t) + sum_;
    sum_ = t;
}

double compensated_sum(std::span<const double> values)
{
    CompensatedSum acc;
    for (double v : values)
        acc.add(v);
    return acc.value();
}

HermiteEval hermite_eval_pair(int k, double x)
{
    require_degree(k);
    double h_prev = 0.0;
    double h = 1.0;
    for (int j = 0; j < k; ++j)
    {
        const double next = (x * h - std::sqrt(static_cast<double>(j)) * h_prev) /
                            std::sqrt(static_cast<double>(j + 1));
        h_prev = h;
        h = next;
    }
    return {k, h, h_prev};
}

double hermite_eval(int k, double x)
{
    return hermite_eval_pair(k, x).value;
}

double hermite_eval_scaled(int k, double x)
{
    require_degree(k);
    const double quarter_sq = 0.25 * x * x;
    double h_prev = 0.0;
    double h = 1.0;
    double log_scale = 0.0;
    // Fold the Gaussian factor into the starting value whenever it is a normal
    // double; otherwise carry it as a log offset.
    if (quarter_sq < 700.0)
        h = std::exp(-quarter_sq);
    else
        log_scale = -quarter_sq;
    log_scale += run_recurrence(k, x, h_prev, h);
    return log_scale == 0.0 ? h : h * std::exp(log_scale);
}

void hermite_scaled_sequence(double x, std::span<double> out)
{
    if (out.empty())
        return;
    const double quarter_sq = 0.25 * x * x;
    if (quarter_sq >= 700.0)
    {
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] = hermite_eval_scaled(static_cast<int>(k), x);
        return;
    }
    double h_prev = 0.0;
    double h = std::exp(-quarter_sq);
    out[0] = h;
    for (std::size_t j = 0; j + 1 < out.size(); ++j)
    {
        const double next = (x * h - std::sqrt(static_cast<double>(j)) * h_prev) /
                            std::sqrt(static_cast<double>(j + 1));
        h_prev = h;
        h = next;
        out[j + 1] = h;
    }
}

LogMagnitude hermite_log_abs(int k, double x)
{
    require_degree(k);
    double h_prev = 0.0;
    double h = 1.0;
    const double log_scale = run_recurrence(k, x, h_prev, h);
    if (h == 0.0)
        return {-std::numeric_limits<double>::infinity(), 1};
    return {std::log(std::abs(h)) + log_scale, h < 0.0 ? -1 : 1};
}

double hermite_ratio(int k, double x)
{
    if (k < 1)
        throw std::invalid_argument("hermite_ratio requires k >= 1");
    double h_prev = 0.0;
    double h = 1.0;
    run_recurrence(k, x, h_prev, h);
    return h / h_prev;
}

double hermite_deriv(int k, double x)
{
    if (k < 1)
        throw std::invalid_argument("hermite_deriv requires k >= 1 (H_0 is constant)");
    return std::sqrt(static_cast<double>(k)) * hermite_eval(k - 1, x);
}

double gaussian_weight(double x)
{
    return constants::inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double gaussian_abs_moment(double p)
{
    if (!(p > 0.0) || !(p < 300.0))
        throw std::invalid_argument("gaussian_abs_moment requires 0 < p < 300");
    return std::pow(2.0, 0.5 * p) * std::tgamma(0.5 * (p + 1.0)) / constants::sqrt_pi;
}

namespace {

// erf(x) = 2/sqrt(pi) e^{-x^2} sum_k 2^k x^{2k+1} / (2k+1)!!  (all terms positive)
double erf_series(double x)
{
    const double two_x2 = 2.0 * x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 500; ++k)
    {
        term *= two_x2 / (2.0 * k + 1.0);
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return 2.0 / constants::sqrt_pi * std::exp(-x * x) * sum;
}

// erfc(x) for x > 0 by modified Lentz on
//   erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
double erfc_continued_fraction(double x)
{
    constexpr double tiny = 1e-300;
    double f = x;
    double c = f;
    double d = 0.0;
    for (int n = 1; n < 20000; ++n)
    {
        const double a = 0.5 * n;
        d = x + a * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = x + a / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            break;
    }
    return std::exp(-x * x) / (constants::sqrt_pi * f);
}

constexpr double kSeriesLimit = 3.0;
constexpr double kErfcFractionFrom = 2.0;

} // namespace

double erf(double x)
{
    if (std::isnan(x))
        return x;
    const double ax = std::abs(x);
    double v;
    if (ax < kSeriesLimit)
        v = erf_series(ax);
    else if (ax > 6.5)
        v = 1.0;
    else
        v = 1.0 - erfc_continued_fraction(ax);
    return x < 0.0 ? -v : v;
}

double erfc(double x)
{
    if (std::isnan(x))
        return x;
    const double ax = std::abs(x);
    double v;
    if (ax < kErfcFractionFrom)
        v = 1.0 - erf_series(ax);
    else if (ax > 27.3)
        v = 0.0;
    else
        v = erfc_continued_fraction(ax);
    return x < 0.0 ? 2.0 - v : v;
}

double riemann_zeta(double s)
{
    if (!(s > 1.0))
        throw std::invalid_argument("riemann_zeta requires s > 1");
    constexpr int N = 64;
    // Direct part, smallest terms first.
    double direct = 0.0;
    for (int m = N - 1; m >= 1; --m)
        direct += std::pow(static_cast<double>(m), -s);
    // Euler-Maclaurin tail for sum_{m >= N} m^{-s}.
    const double n = N;
    const double ns = std::pow(n, -s);
    const double tail = n * ns / (s - 1.0) + 0.5 * ns + s * ns / (12.0 * n) -
                        s * (s + 1.0) * (s + 2.0) * ns / (720.0 * n * n * n) +
                        s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * ns /
                            (30240.0 * n * n * n * n * n);
    return direct + tail;
}

} // namespace ghtrap
