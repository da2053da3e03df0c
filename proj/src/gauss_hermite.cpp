#include "ghtrap/gauss_hermite.hpp"

#include "ghtrap/special.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ghtrap {

namespace {

constexpr int kMaxNewtonIterations = 200;

std::vector<double> jacobi_eigenvalues(int n)
{
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (int i = 0; i < n - 1; ++i)
        sub[i] = std::sqrt(static_cast<double>(i + 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("tridiagonal eigensolver failed for n = " + std::to_string(n));
    std::vector<double> eig(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double newton_polish(int n, double x)
{
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    double prev_step = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxNewtonIterations; ++it)
    {
        // H_n / H_n' = (H_n / H_{n-1}) / sqrt(n)
        const double step = hermite_ratio(n, x) / sqrt_n;
        if (!std::isfinite(step))
            break;
        x -= step;
        const double size = std::max(1.0, std::abs(x));
        if (std::abs(step) < 1e-15 * size)
            return x;
        // Rounding-limited: the step no longer shrinks and is already tiny.
        if (std::abs(step) >= std::abs(prev_step) && std::abs(step) < 1e-12 * size)
            return x;
        prev_step = step;
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "Newton refinement of a Gauss-Hermite node did not converge (n = " << n
        << ", last iterate " << x << ")";
    throw NumericError(msg.str());
}

} // namespace

QuadratureRule gh_rule(int n)
{
    if (n < 1 || n > kMaxGaussHermitePoints)
        throw std::invalid_argument("gh_rule requires 1 <= n <= 2000, got " + std::to_string(n));

    QuadratureRule rule;
    rule.kind = RuleKind::GaussHermite;
    rule.nodes.assign(n, 0.0);
    rule.log_weights.assign(n, 0.0);

    if (n > 1)
    {
        const std::vector<double> guess = jacobi_eigenvalues(n);
        std::vector<double> refined(n);
        for (int j = 0; j < n; ++j)
            refined[j] = newton_polish(n, guess[j]);
        std::sort(refined.begin(), refined.end());
        for (int j = 1; j < n; ++j)
            if (!(refined[j] - refined[j - 1] > 1e-8))
                throw NumericError("Newton refinement merged two Gauss-Hermite nodes (n = " +
                                   std::to_string(n) + ")");

        // Enforce xi_j = -xi_{n+1-j}; the centre node of an odd rule is 0.
        for (int j = 0; j < n / 2; ++j)
        {
            const double r = 0.5 * (refined[n - 1 - j] - refined[j]);
            rule.nodes[j] = -r;
            rule.nodes[n - 1 - j] = r;
        }

        const double log_n = std::log(static_cast<double>(n));
        for (int j = n / 2; j < n; ++j)
        {
            const LogMagnitude h = hermite_log_abs(n - 1, rule.nodes[j]);
            const double lw = -log_n - 2.0 * h.log_abs;
            rule.log_weights[j] = lw;
            rule.log_weights[n - 1 - j] = lw;
        }
    }

    rule.weights.resize(n);
    std::transform(rule.log_weights.begin(), rule.log_weights.end(), rule.weights.begin(),
                   [](double lw) { return std::exp(lw); });
    return rule;
}

} // namespace ghtrap
