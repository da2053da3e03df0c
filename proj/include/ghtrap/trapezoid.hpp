#pragma once

#include "ghtrap/integrand.hpp"
#include "ghtrap/quadrature_rule.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>

namespace ghtrap {

inline constexpr double kDefaultEpsilon = 0.51;

/// Cut-off growth function gamma(n) for the alpha-free construction. Must be
/// non-decreasing and unbounded.
struct GrowthFunction
{
    std::string name;
    std::function<double(double)> eval;
};

/// gamma(n) = max(ln ln n, 0).
GrowthFunction loglog_growth();

/// gamma(n) = alpha, reproducing the fixed-alpha cut-off.
GrowthFunction constant_growth(double alpha);

struct FixedAlpha
{
    int alpha = 1;
};

struct AlphaFree
{
    GrowthFunction gamma;
    /// If set, n is required to satisfy n >= gamma^{-1}(target_alpha).
    std::optional<int> target_alpha;
};

/// How T is chosen for the truncated trapezoidal rule.
struct CutoffPolicy
{
    std::variant<FixedAlpha, AlphaFree> variant = FixedAlpha{};
    double epsilon = kDefaultEpsilon;
};

/// T = sqrt( 2/(1-eps) * alpha * ln n ). n is real so that the formula can be
/// probed at non-integer points; requires n >= 2, alpha >= 1, eps in (0,1).
double cutoff_T(double n, int alpha, double epsilon);

/// T = sqrt( 2/(1-eps) * gamma(n) * ln n ). Throws std::invalid_argument if
/// gamma(n) <= 0, or if target_alpha is given and n < gamma^{-1}(target_alpha).
double cutoff_T_alpha_free(double n, const GrowthFunction& gamma, double epsilon,
                           std::optional<int> target_alpha = std::nullopt);

/// min { m >= 1 integer : gamma(m) >= level }, searched up to 2^62.
long long growth_inverse(const GrowthFunction& gamma, double level);

/// T for the given policy and point count.
double policy_cutoff(int n, const CutoffPolicy& policy);

/// Q*_{n,T}: nodes 2Tj/n - T for j = 0..n-1 (T itself is not a node), every
/// weight equal to 2T/n. This integrates against Lebesgue measure.
QuadratureRule trap_rule(int n, double T);

/// Q*_{n,T}(f rho) with T from the policy: approximates E[f(X)], X ~ N(0,1).
double integrate_gaussian(int n, const CutoffPolicy& policy, const std::function<double(double)>& f);
double integrate_gaussian(int n, const CutoffPolicy& policy, const Integrand& f);

} // namespace ghtrap
