#pragma once

#include "ghtrap/integrand.hpp"
#include "ghtrap/quadrature_rule.hpp"
#include "ghtrap/trapezoid.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ghtrap {

/// One (rule, n) row of a convergence sweep.
struct ConvergenceRecord
{
    RuleKind rule_kind = RuleKind::GaussHermite;
    std::string integrand;
    int n = 0;
    int alpha = 1;
    std::optional<double> epsilon; // trapezoid only
    std::optional<double> T;       // trapezoid only
    double abs_error = 0.0;

    bool operator==(const ConvergenceRecord&) const = default;
};

/// Least-squares line through (log10 n, log10 error).
struct RateFit
{
    RuleKind rule_kind = RuleKind::GaussHermite;
    std::string integrand;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::pair<int, int> n_range{0, 0};
};

/// Rows at or below this error are treated as saturated and left out of fits.
inline constexpr double kErrorFloor = 1e-15;

/// |x|^p for p in {1,3,5} (alpha = p), e^{tx} for t in {1/2, 1} and x^d for
/// d = 1..8 (declared alpha 2), all with exact Gaussian integrals and analytic
/// derivatives.
std::vector<Integrand> corpus();

/// Corpus entry by label; throws std::invalid_argument if absent.
Integrand corpus_entry(const std::string& label);

/// |x|^p with exact piecewise derivatives and E|X|^p as exact integral.
Integrand abs_power(int p);

struct SweepSpec
{
    RuleKind kind = RuleKind::GaussHermite;
    double epsilon = kDefaultEpsilon;
    /// GH counts coerced to even, trapezoid counts to odd, so that neither
    /// rule samples the origin.
    bool enforce_parity = true;
    /// Trapezoid cut-off smoothness; defaults to the integrand's alpha.
    std::optional<int> alpha;
};

/// n coerced to the sweep's parity (n+1 when it has the wrong parity).
int coerce_parity(RuleKind kind, int n);

/// One record per distinct (coerced) n, ascending. Requires an exact integral
/// on f and every n >= 2. Rows are evaluated concurrently and assembled in
/// order.
std::vector<ConvergenceRecord> run_sweep(const SweepSpec& spec, const Integrand& f, std::span<const int> ns);

/// Geometric grid lo, lo*sqrt2, ... up to hi, rounded and coerced to parity
/// (0 = even, 1 = odd, -1 = none), deduplicated.
std::vector<int> geometric_grid(int lo, int hi, int parity);

/// Fit over rows with abs_error > kErrorFloor; needs at least 3 of them.
RateFit fit_rate(std::span<const ConvergenceRecord> records);

/// Plain (n, error) fit, same filtering.
RateFit fit_rate(std::span<const int> ns, std::span<const double> errors);

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double v);

inline constexpr const char* kSweepHeader = "rule,integrand,n,alpha,epsilon,T,abs_error";
inline constexpr const char* kFitHeader = "rule,integrand,slope,intercept,r_squared,n_min,n_max";

/// Rows sorted by (rule, integrand, n). Throws std::runtime_error when the
/// path cannot be written.
void emit_csv(std::span<const ConvergenceRecord> records, std::ostream& out);
void emit_csv(std::span<const ConvergenceRecord> records, const std::filesystem::path& path);
void emit_csv(std::span<const RateFit> fits, std::ostream& out);
void emit_csv(std::span<const RateFit> fits, const std::filesystem::path& path);

std::vector<ConvergenceRecord> parse_sweep_csv(std::istream& in);
std::vector<RateFit> parse_fit_csv(std::istream& in);

struct Fig1Result
{
    std::vector<std::filesystem::path> files;
    std::vector<RateFit> fits;
};

/// Writes fig1_p1.csv, fig1_p3.csv, fig1_p5.csv (both rules, |x|^p) and
/// fig1_fits.csv into out_dir. GH uses even n from 16 to 2000 (the gh_rule
/// cap), the trapezoid odd n from 17 to 2047 with alpha = p and epsilon = 0.51.
Fig1Result run_fig1(const std::filesystem::path& out_dir);

} // namespace ghtrap
