#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ghtrap {

class Integrand;

/// Raised when a numerical routine cannot produce a trustworthy value
/// (non-finite integrand, Newton failure, overflow). Precondition violations
/// use std::invalid_argument instead.
class NumericError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class RuleKind
{
    GaussHermite,
    TruncatedTrapezoid,
    Custom,
};

std::string_view to_string(RuleKind kind);
RuleKind rule_kind_from_string(std::string_view name);

struct RuleParams
{
    std::optional<double> T;
    std::optional<int> alpha;
    std::optional<double> epsilon;
};

/// Node/weight set for integrating against the standard normal density
/// (Gauss-Hermite) or against Lebesgue measure on [-T, T) (trapezoid).
///
/// nodes are strictly increasing. log_weights, when non-empty, holds
/// log(w_j) exactly for rules whose weights can underflow; weights[j] is then
/// exp(log_weights[j]) and may be 0.
struct QuadratureRule
{
    RuleKind kind = RuleKind::Custom;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> log_weights;
    RuleParams params;

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }

    /// log(w_j), from log_weights when present. -inf for a zero weight,
    /// NaN for a negative one.
    [[nodiscard]] double log_weight(std::size_t j) const;
};

/// Builds a Custom rule, validating ordering and sizes.
QuadratureRule make_rule(std::vector<double> nodes, std::vector<double> weights);

/// Throws std::invalid_argument unless nodes are strictly increasing,
/// non-empty and sizes agree.
void validate(const QuadratureRule& rule);

struct SpacingStats
{
    double min_gap = 0.0;
    double max_gap = 0.0;
};

/// Min/max adjacent node gap; requires at least two nodes.
SpacingStats spacing_stats(const QuadratureRule& rule);

/// sum_j w_j f(x_j), compensated. A non-finite f(x_j) raises NumericError
/// naming the node.
double apply(const QuadratureRule& rule, const std::function<double(double)>& f);
double apply(const QuadratureRule& rule, const Integrand& f);

} // namespace ghtrap
