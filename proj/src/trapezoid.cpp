#include "ghtrap/trapezoid.hpp"

#include "ghtrap/special.hpp"

#include <cmath>
#include <stdexcept>

namespace ghtrap {

namespace {

void require_epsilon(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("cut-off epsilon must lie in (0, 1)");
}

void require_point_count(double n)
{
    if (!(n >= 2.0))
        throw std::invalid_argument("cut-off T requires n >= 2");
}

} // namespace

GrowthFunction loglog_growth()
{
    return {"loglog", [](double n) { return n > 1.0 ? std::max(std::log(std::log(n)), 0.0) : 0.0; }};
}

GrowthFunction constant_growth(double alpha)
{
    return {"const", [alpha](double) { return alpha; }};
}

double cutoff_T(double n, int alpha, double epsilon)
{
    require_point_count(n);
    require_epsilon(epsilon);
    if (alpha < 1)
        throw std::invalid_argument("cut-off T requires alpha >= 1");
    return std::sqrt(2.0 / (1.0 - epsilon) * alpha * std::log(n));
}

long long growth_inverse(const GrowthFunction& gamma, double level)
{
    long long hi = 1;
    while (gamma.eval(static_cast<double>(hi)) < level)
    {
        if (hi > (1LL << 61))
            throw std::invalid_argument("growth function '" + gamma.name +
                                        "' does not reach the requested level");
        hi *= 2;
    }
    long long lo = hi / 2; // gamma(lo) < level unless hi == 1
    if (hi == 1)
        return 1;
    while (hi - lo > 1)
    {
        const long long mid = lo + (hi - lo) / 2;
        if (gamma.eval(static_cast<double>(mid)) >= level)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double cutoff_T_alpha_free(double n, const GrowthFunction& gamma, double epsilon,
                           std::optional<int> target_alpha)
{
    require_point_count(n);
    require_epsilon(epsilon);
    if (!gamma.eval)
        throw std::invalid_argument("growth function has no evaluator");
    if (target_alpha)
    {
        const long long n_min = growth_inverse(gamma, *target_alpha);
        if (n < static_cast<double>(n_min))
            throw std::invalid_argument("alpha-free cut-off: n = " + std::to_string(n) +
                                        " is below gamma^{-1}(" + std::to_string(*target_alpha) +
                                        ") = " + std::to_string(n_min));
    }
    const double g = gamma.eval(n);
    if (!(g > 0.0))
        throw std::invalid_argument("alpha-free cut-off: gamma(n) must be positive");
    return std::sqrt(2.0 / (1.0 - epsilon) * g * std::log(n));
}

double policy_cutoff(int n, const CutoffPolicy& policy)
{
    if (const auto* fixed = std::get_if<FixedAlpha>(&policy.variant))
        return cutoff_T(n, fixed->alpha, policy.epsilon);
    const auto& free = std::get<AlphaFree>(policy.variant);
    return cutoff_T_alpha_free(n, free.gamma, policy.epsilon, free.target_alpha);
}

QuadratureRule trap_rule(int n, double T)
{
    if (n < 1)
        throw std::invalid_argument("trap_rule requires n >= 1");
    if (!(T > 0.0) || !std::isfinite(T))
        throw std::invalid_argument("trap_rule requires a finite T > 0");
    QuadratureRule rule;
    rule.kind = RuleKind::TruncatedTrapezoid;
    rule.params.T = T;
    rule.nodes.resize(n);
    const double step = 2.0 * T / n;
    for (int j = 0; j < n; ++j)
        rule.nodes[j] = step * j - T;
    rule.weights.assign(n, step);
    return rule;
}

double integrate_gaussian(int n, const CutoffPolicy& policy, const std::function<double(double)>& f)
{
    if (n < 2)
        throw std::invalid_argument("integrate_gaussian requires n >= 2");
    QuadratureRule rule = trap_rule(n, policy_cutoff(n, policy));
    rule.params.epsilon = policy.epsilon;
    if (const auto* fixed = std::get_if<FixedAlpha>(&policy.variant))
        rule.params.alpha = fixed->alpha;
    return apply(rule, [&f](double x) { return f(x) * gaussian_weight(x); });
}

double integrate_gaussian(int n, const CutoffPolicy& policy, const Integrand& f)
{
    return integrate_gaussian(n, policy, [&f](double x) { return f(x); });
}

} // namespace ghtrap
