#include "ghtrap/wce.hpp"

#include "ghtrap/spaces.hpp"
#include "ghtrap/special.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ghtrap {

int default_wce_truncation(std::size_t n)
{
    return static_cast<int>(std::max<std::size_t>(10000, 8 * n));
}

namespace {

/// w_j e^{x_j^2/4}, formed from log|w_j| so that underflowed weights survive.
std::vector<double> folded_weights(const QuadratureRule& rule)
{
    std::vector<double> out(rule.size());
    for (std::size_t j = 0; j < rule.size(); ++j)
    {
        const double x = rule.nodes[j];
        const double w = rule.weights[j];
        double log_abs;
        double sign = 1.0;
        if (!rule.log_weights.empty())
            log_abs = rule.log_weights[j];
        else if (w == 0.0)
        {
            out[j] = 0.0;
            continue;
        }
        else
        {
            log_abs = std::log(std::abs(w));
            sign = w < 0.0 ? -1.0 : 1.0;
        }
        out[j] = sign * std::exp(log_abs + 0.25 * x * x);
        if (!std::isfinite(out[j]))
            throw NumericError("wce_series: w_j exp(x_j^2/4) overflows at node " + std::to_string(x) +
                               "; such a rule needs a log-space defect evaluation");
    }
    return out;
}

void require_alpha(int alpha)
{
    if (alpha < 1)
        throw std::invalid_argument("alpha must be >= 1");
}

} // namespace

std::vector<double> rule_hermite_defects(const QuadratureRule& rule, int K)
{
    validate(rule);
    if (K < 0)
        throw std::invalid_argument("truncation K must be non-negative");
    const std::vector<double> folded = folded_weights(rule);
    std::vector<CompensatedSum> acc(K + 1);
    std::vector<double> seq(K + 1);
    for (std::size_t j = 0; j < rule.size(); ++j)
    {
        if (folded[j] == 0.0)
            continue;
        hermite_scaled_sequence(rule.nodes[j], seq);
        for (int k = 0; k <= K; ++k)
            acc[k].add(folded[j] * seq[k]);
    }
    std::vector<double> defects(K + 1);
    for (int k = 0; k <= K; ++k)
        defects[k] = acc[k].value();
    // I(H_0) = 1, I(H_k) = 0 otherwise
    CompensatedSum d0 = acc[0];
    d0.add(-1.0);
    defects[0] = d0.value();
    return defects;
}

WceEstimate wce_series(const QuadratureRule& rule, int alpha, int K)
{
    require_alpha(alpha);
    if (K < 1)
        throw std::invalid_argument("wce_series requires K >= 1");
    const std::vector<double> defects = rule_hermite_defects(rule, K);
    CompensatedSum sq;
    for (int k = 0; k <= K; ++k)
        sq.add(r_alpha(alpha, k) * defects[k] * defects[k]);

    double folded_l1 = 0.0;
    for (double v : folded_weights(rule))
        folded_l1 += std::abs(v);

    WceEstimate est;
    est.value = std::sqrt(std::max(0.0, sq.value()));
    est.K = K;
    est.alpha = alpha;
    est.tail_bound = r_alpha(alpha, K + 1) * folded_l1 * folded_l1;
    return est;
}

WceEstimate wce_series(const QuadratureRule& rule, int alpha)
{
    return wce_series(rule, alpha, default_wce_truncation(rule.size()));
}

namespace {

constexpr int kLegendrePoints = 32;

struct LegendreRule
{
    std::array<double, kLegendrePoints> nodes{};   // on [0, 1]
    std::array<double, kLegendrePoints> weights{}; // sum to 1
};

/// 32-point Gauss-Legendre on [0, 1] by Newton on P_32.
const LegendreRule& legendre32()
{
    static const LegendreRule rule = [] {
        LegendreRule r;
        constexpr int n = kLegendrePoints;
        for (int i = 0; i < n; ++i)
        {
            double x = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it)
            {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= n; ++k)
                {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double step = p1 / dp;
                x -= step;
                if (std::abs(step) < 1e-16)
                    break;
            }
            r.nodes[i] = 0.5 * (1.0 - x);
            r.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

/// coef[tau][l] = (-1)^l C(alpha, l) (alpha+l)! / (alpha+l-tau)!, so that
/// d^tau/du^tau [u^alpha (1-u)^alpha] = sum_l coef[tau][l] u^{alpha+l-tau}.
std::vector<std::vector<double>> bump_derivative_coefficients(int alpha)
{
    std::vector<std::vector<double>> coef(alpha + 1, std::vector<double>(alpha + 1));
    double binom = 1.0;
    for (int l = 0; l <= alpha; ++l)
    {
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        double falling = 1.0;
        for (int tau = 0; tau <= alpha; ++tau)
        {
            if (tau > 0)
                falling *= static_cast<double>(alpha + l - tau + 1);
            coef[tau][l] = sign * binom * falling;
        }
        binom = binom * (alpha - l) / (l + 1);
    }
    return coef;
}

} // namespace

BumpCertificate bump_certificate(std::span<const double> nodes, int alpha)
{
    require_alpha(alpha);
    if (nodes.size() < 2)
        throw std::invalid_argument("bump_certificate requires at least two nodes");
    for (std::size_t j = 1; j < nodes.size(); ++j)
    {
        if (nodes[j] == nodes[j - 1])
            throw std::invalid_argument("bump_certificate: duplicate node " + std::to_string(nodes[j]));
        if (!(nodes[j] > nodes[j - 1]))
            throw std::invalid_argument("bump_certificate: nodes must be sorted increasingly");
    }

    const LegendreRule& gl = legendre32();
    const auto coef = bump_derivative_coefficients(alpha);

    CompensatedSum integral;
    std::vector<CompensatedSum> seminorms(alpha + 1);
    std::vector<double> upow(2 * alpha + 1);

    for (std::size_t j = 0; j + 1 < nodes.size(); ++j)
    {
        const double a = nodes[j];
        const double gap = nodes[j + 1] - a;
        // Sub-panels of width <= 1 keep the Gaussian factor well resolved.
        const int panels = std::max(1, static_cast<int>(std::ceil(gap)));
        for (int p = 0; p < panels; ++p)
        {
            for (int i = 0; i < kLegendrePoints; ++i)
            {
                const double u = (p + gl.nodes[i]) / panels;
                const double x = a + gap * u;
                const double rho = gaussian_weight(x);
                if (rho == 0.0)
                    continue;
                const double dx = gap / panels * gl.weights[i];

                upow[0] = 1.0;
                for (std::size_t e = 1; e < upow.size(); ++e)
                    upow[e] = upow[e - 1] * u;
                const double v = upow[alpha] * std::pow(1.0 - u, alpha);
                integral.add(dx * v * rho);

                double inv_gap_pow = 1.0;
                for (int tau = 0; tau <= alpha; ++tau)
                {
                    double d = 0.0;
                    for (int l = 0; l <= alpha; ++l)
                        d += coef[tau][l] * upow[alpha + l - tau];
                    d *= inv_gap_pow;
                    seminorms[tau].add(dx * d * d * rho);
                    inv_gap_pow /= gap;
                }
            }
        }
    }

    double norm_sq = 0.0;
    for (const auto& s : seminorms)
        norm_sq += s.value();

    BumpCertificate cert;
    cert.I_h = integral.value();
    cert.norm_h = std::sqrt(norm_sq);
    cert.alpha = alpha;
    cert.n = nodes.size();
    if (!(cert.I_h > 0.0) || !(cert.norm_h > 0.0))
        throw NumericError("bump_certificate: bump integral underflowed (nodes too far from the origin)");
    cert.ratio = cert.I_h / cert.norm_h;
    return cert;
}

double gap_certificate(double delta, int alpha)
{
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("gap_certificate requires 0 < delta <= 1");
    const std::array<double, 2> nodes{0.0, delta};
    return bump_certificate(nodes, alpha).ratio;
}

double S_alpha_tau(int alpha, int tau)
{
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    require_alpha(alpha);
    if (tau < 0 || tau > alpha)
        throw std::invalid_argument("S_alpha_tau requires 0 <= tau <= alpha");

    std::vector<cpp_int> term(alpha + 1); // C(alpha,l) (alpha+l)!/(alpha+l-tau)!
    cpp_int binom = 1;
    for (int l = 0; l <= alpha; ++l)
    {
        cpp_int falling = 1;
        for (int i = 0; i < tau; ++i)
            falling *= alpha + l - i;
        term[l] = binom * falling;
        binom = binom * (alpha - l) / (l + 1);
    }

    cpp_rational sum = 0;
    for (int l1 = 0; l1 <= alpha; ++l1)
        for (int l2 = 0; l2 <= alpha; ++l2)
        {
            cpp_rational t(term[l1] * term[l2], cpp_int(2 * (alpha - tau) + l1 + l2 + 1));
            if ((l1 + l2) % 2 == 0)
                sum += t;
            else
                sum -= t;
        }
    return sum.convert_to<double>();
}

double general_lower_constant(int alpha)
{
    require_alpha(alpha);
    double s = 0.0;
    for (int tau = 0; tau <= alpha; ++tau)
        s += S_alpha_tau(alpha, tau);
    // (alpha!)^2 / (2 alpha + 1)! = 1 / ((2 alpha + 1) C(2 alpha, alpha))
    double central = 1.0;
    for (int i = 1; i <= alpha; ++i)
        central = central * (alpha + i) / i;
    const double beta = 1.0 / ((2.0 * alpha + 1.0) * central);
    return beta / std::pow(2.0 * constants::pi, 0.25) / std::sqrt(s);
}

double explicit_lower_constant(int alpha)
{
    const double erf_gap = ghtrap::erfc(3.0) - ghtrap::erfc(13.0 / 3.0);
    return general_lower_constant(alpha) * std::pow(constants::pi, 0.25) * erf_gap /
           std::pow(2.0, 0.5 * (alpha + 6));
}

double trap_theory_constant(int alpha)
{
    require_alpha(alpha);
    return 2.0 * std::sqrt(riemann_zeta(2.0 * alpha)) / std::pow(constants::pi, alpha);
}

} // namespace ghtrap
