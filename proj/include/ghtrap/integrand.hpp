#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ghtrap {

using RealFunction = std::function<double(double)>;

/// A test function f together with whatever is known about it: analytic
/// derivatives f', f'', ..., a declared smoothness alpha and, when available,
/// the exact value of E[f(X)] for X ~ N(0,1).
class Integrand
{
public:
    Integrand() = default;
    Integrand(std::string label, RealFunction eval, int alpha,
              std::vector<RealFunction> derivs = {},
              std::optional<double> exact_integral = std::nullopt);

    [[nodiscard]] double operator()(double x) const { return eval_(x); }

    /// f^(order)(x). order 0 is f itself. Falls back to central finite
    /// differences only if allow_finite_differences() was set; otherwise a
    /// missing derivative throws std::invalid_argument.
    [[nodiscard]] double derivative(int order, double x) const;

    [[nodiscard]] bool has_derivative(int order) const;

    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] int alpha() const noexcept { return alpha_; }
    [[nodiscard]] const std::optional<double>& exact_integral() const noexcept { return exact_; }
    [[nodiscard]] std::size_t derivative_count() const noexcept { return derivs_.size(); }

    Integrand& allow_finite_differences(bool on = true)
    {
        finite_differences_ = on;
        return *this;
    }
    [[nodiscard]] bool finite_differences_allowed() const noexcept { return finite_differences_; }

private:
    std::string label_;
    RealFunction eval_;
    std::vector<RealFunction> derivs_;
    int alpha_ = 1;
    std::optional<double> exact_;
    bool finite_differences_ = false;
};

} // namespace ghtrap
