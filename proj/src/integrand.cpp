#include "ghtrap/integrand.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ghtrap {

Integrand::Integrand(std::string label, RealFunction eval, int alpha,
                     std::vector<RealFunction> derivs, std::optional<double> exact_integral)
    : label_(std::move(label)),
      eval_(std::move(eval)),
      derivs_(std::move(derivs)),
      alpha_(alpha),
      exact_(exact_integral)
{
    if (!eval_)
        throw std::invalid_argument("Integrand '" + label_ + "' has no evaluator");
    if (alpha_ < 1)
        throw std::invalid_argument("Integrand '" + label_ + "': alpha must be >= 1");
    if (!derivs_.empty() && derivs_.size() < static_cast<std::size_t>(alpha_))
        throw std::invalid_argument("Integrand '" + label_ + "': fewer derivatives than alpha");
}

bool Integrand::has_derivative(int order) const
{
    return order == 0 || (order > 0 && static_cast<std::size_t>(order) <= derivs_.size());
}

double Integrand::derivative(int order, double x) const
{
    if (order < 0)
        throw std::invalid_argument("negative derivative order");
    if (order == 0)
        return eval_(x);
    if (static_cast<std::size_t>(order) <= derivs_.size())
        return derivs_[order - 1](x);
    if (!finite_differences_)
        throw std::invalid_argument("Integrand '" + label_ + "': derivative of order " +
                                    std::to_string(order) +
                                    " not supplied and finite differences not enabled");

    // Central difference of order `order`, step eps^{1/(order+2)} max(1,|x|).
    const double h = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (order + 2)) *
                     std::max(1.0, std::abs(x));
    double acc = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= order; ++i)
    {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binom * eval_(x + (0.5 * order - i) * h);
        binom = binom * (order - i) / (i + 1);
    }
    return acc / std::pow(h, order);
}

} // namespace ghtrap
