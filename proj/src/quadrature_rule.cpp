#include "ghtrap/quadrature_rule.hpp"

#include "ghtrap/integrand.hpp"
#include "ghtrap/special.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ghtrap {

std::string_view to_string(RuleKind kind)
{
    switch (kind)
    {
    case RuleKind::GaussHermite: return "gh";
    case RuleKind::TruncatedTrapezoid: return "trap";
    case RuleKind::Custom: return "custom";
    }
    return "custom";
}

RuleKind rule_kind_from_string(std::string_view name)
{
    if (name == "gh")
        return RuleKind::GaussHermite;
    if (name == "trap")
        return RuleKind::TruncatedTrapezoid;
    if (name == "custom")
        return RuleKind::Custom;
    throw std::invalid_argument("unknown rule kind '" + std::string(name) + "'");
}

double QuadratureRule::log_weight(std::size_t j) const
{
    if (!log_weights.empty())
        return log_weights.at(j);
    const double w = weights.at(j);
    if (w < 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    return std::log(w);
}

void validate(const QuadratureRule& rule)
{
    if (rule.nodes.empty())
        throw std::invalid_argument("quadrature rule has no nodes");
    if (rule.nodes.size() != rule.weights.size())
        throw std::invalid_argument("quadrature rule: nodes and weights differ in length");
    if (!rule.log_weights.empty() && rule.log_weights.size() != rule.nodes.size())
        throw std::invalid_argument("quadrature rule: log_weights length mismatch");
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
    {
        if (!std::isfinite(rule.nodes[j]) || !std::isfinite(rule.weights[j]))
            throw std::invalid_argument("quadrature rule: non-finite node or weight");
        if (j > 0 && !(rule.nodes[j] > rule.nodes[j - 1]))
            throw std::invalid_argument("quadrature rule: nodes must be strictly increasing");
    }
}

QuadratureRule make_rule(std::vector<double> nodes, std::vector<double> weights)
{
    QuadratureRule rule;
    rule.kind = RuleKind::Custom;
    rule.nodes = std::move(nodes);
    rule.weights = std::move(weights);
    validate(rule);
    return rule;
}

SpacingStats spacing_stats(const QuadratureRule& rule)
{
    if (rule.nodes.size() < 2)
        throw std::invalid_argument("spacing_stats requires at least two nodes");
    SpacingStats s{std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t j = 1; j < rule.nodes.size(); ++j)
    {
        const double gap = rule.nodes[j] - rule.nodes[j - 1];
        s.min_gap = std::min(s.min_gap, gap);
        s.max_gap = std::max(s.max_gap, gap);
    }
    return s;
}

double apply(const QuadratureRule& rule, const std::function<double(double)>& f)
{
    CompensatedSum acc;
    const std::size_t n = rule.nodes.size();
    // visit 0, n-1, 1, n-2, ... so mirrored terms of an odd integrand cancel exactly
    for (std::size_t i = 0; i < n; ++i)
    {
        const std::size_t j = (i % 2 == 0) ? i / 2 : n - 1 - i / 2;
        const double v = f(rule.nodes[j]);
        if (!std::isfinite(v))
        {
            std::ostringstream msg;
            msg.precision(17);
            msg << "integrand is not finite at node " << rule.nodes[j] << " (index " << j << ")";
            throw NumericError(msg.str());
        }
        if (rule.weights[j] == 0.0 && !rule.log_weights.empty() && v != 0.0)
            // underflowed weight: combine in log space in case |f| is large
            acc.add(std::copysign(std::exp(rule.log_weights[j] + std::log(std::abs(v))), v));
        else
            acc.add(rule.weights[j] * v);
    }
    return acc.value();
}

double apply(const QuadratureRule& rule, const Integrand& f)
{
    return apply(rule, [&f](double x) { return f(x); });
}

} // namespace ghtrap
