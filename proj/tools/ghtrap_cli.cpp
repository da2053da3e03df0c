// Command-line front end: prints rules, integrals, sweeps, worst-case errors
// and certificates as CSV on stdout.
//
// Exit codes: 0 success, 1 numeric failure, 2 usage error.

#include "ghtrap/gauss_hermite.hpp"
#include "ghtrap/spaces.hpp"
#include "ghtrap/special.hpp"
#include "ghtrap/study.hpp"
#include "ghtrap/trapezoid.hpp"
#include "ghtrap/wce.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ghtrap;

constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct RuleFlags
{
    std::string rule = "gh";
    int n = 0;
    std::optional<double> T;
    std::optional<int> alpha;
    double epsilon = kDefaultEpsilon;
};

void add_rule_flags(CLI::App* cmd, RuleFlags& f, bool alpha_help_is_cutoff = true)
{
    cmd->add_option("--rule", f.rule, "Rule: gh or trap")->check(CLI::IsMember({"gh", "trap"}))->capture_default_str();
    cmd->add_option("--n", f.n, "Number of points")->required();
    cmd->add_option("--T", f.T, "Trapezoid half-width (overrides --alpha/--epsilon)");
    if (alpha_help_is_cutoff)
        cmd->add_option("--alpha", f.alpha, "Smoothness used for the trapezoid cut-off");
    cmd->add_option("--epsilon", f.epsilon, "Cut-off parameter epsilon in (0,1)")->capture_default_str();
}

void check_rule_flags(const RuleFlags& f, std::optional<int> alpha)
{
    if (f.n < 1)
        throw UsageError("--n must be >= 1");
    if (f.rule == "gh" && f.n > kMaxGaussHermitePoints)
        throw UsageError("--n must be <= " + std::to_string(kMaxGaussHermitePoints) + " for gh");
    if (f.rule == "trap")
    {
        if (f.T)
        {
            if (!(*f.T > 0.0) || !std::isfinite(*f.T))
                throw UsageError("--T must be positive");
        }
        else
        {
            if (!alpha)
                throw UsageError("trap needs --T or --alpha");
            if (*alpha < 1)
                throw UsageError("--alpha must be >= 1");
            if (!(f.epsilon > 0.0 && f.epsilon < 1.0))
                throw UsageError("--epsilon must lie in (0,1)");
            if (f.n < 2)
                throw UsageError("trap with an automatic cut-off needs --n >= 2");
        }
    }
}

double resolve_T(const RuleFlags& f, std::optional<int> alpha)
{
    return f.T ? *f.T : cutoff_T(f.n, *alpha, f.epsilon);
}

/// The trapezoid with weights 2T/n * rho(x_j): a rule against the Gaussian.
QuadratureRule gaussian_trap_rule(int n, double T)
{
    QuadratureRule raw = trap_rule(n, T);
    std::vector<double> w(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j)
        w[j] = raw.weights[j] * gaussian_weight(raw.nodes[j]);
    QuadratureRule rule = make_rule(raw.nodes, std::move(w));
    rule.params = raw.params;
    return rule;
}

int cmd_nodes(const RuleFlags& f)
{
    check_rule_flags(f, f.alpha);
    const QuadratureRule rule = f.rule == "gh" ? gh_rule(f.n) : trap_rule(f.n, resolve_T(f, f.alpha));
    std::cout << "j,node,weight\n";
    for (std::size_t j = 0; j < rule.size(); ++j)
        std::cout << j << ',' << format_double(rule.nodes[j]) << ',' << format_double(rule.weights[j]) << '\n';
    return 0;
}

Integrand lookup_integrand(const std::string& label)
{
    try
    {
        return corpus_entry(label);
    }
    catch (const std::invalid_argument& e)
    {
        throw UsageError(e.what());
    }
}

int cmd_integrate(const RuleFlags& f, const std::string& label)
{
    const Integrand g = lookup_integrand(label);
    const std::optional<int> alpha = f.alpha ? f.alpha : std::optional<int>(g.alpha());
    check_rule_flags(f, alpha);
    double value;
    std::optional<double> T;
    if (f.rule == "gh")
        value = apply(gh_rule(f.n), g);
    else
    {
        T = resolve_T(f, alpha);
        value = apply(trap_rule(f.n, *T), [&g](double x) { return g(x) * gaussian_weight(x); });
    }
    std::cout << "rule,integrand,n,T,value,exact,abs_error\n";
    std::cout << f.rule << ',' << g.label() << ',' << f.n << ',' << (T ? format_double(*T) : "") << ','
              << format_double(value) << ',';
    if (g.exact_integral())
        std::cout << format_double(*g.exact_integral()) << ','
                  << format_double(std::abs(value - *g.exact_integral()));
    else
        std::cout << ',';
    std::cout << '\n';
    return 0;
}

struct SweepFlags
{
    std::string rule = "gh";
    std::string integrand = "abs_p1";
    std::vector<int> ns;
    int n_min = 16;
    int n_max = 2000;
    std::optional<int> alpha;
    double epsilon = kDefaultEpsilon;
    bool no_parity = false;
    bool fit = false;
    std::string out;
};

int cmd_sweep(const SweepFlags& s)
{
    const Integrand g = lookup_integrand(s.integrand);
    if (s.ns.empty() && (s.n_min < 2 || s.n_max < s.n_min))
        throw UsageError("need 2 <= --n-min <= --n-max");
    for (int n : s.ns)
        if (n < 2)
            throw UsageError("every --ns entry must be >= 2");
    if (!(s.epsilon > 0.0 && s.epsilon < 1.0))
        throw UsageError("--epsilon must lie in (0,1)");
    if (s.alpha && *s.alpha < 1)
        throw UsageError("--alpha must be >= 1");

    SweepSpec spec;
    spec.kind = rule_kind_from_string(s.rule);
    spec.epsilon = s.epsilon;
    spec.enforce_parity = !s.no_parity;
    spec.alpha = s.alpha;
    const int parity = s.no_parity ? -1 : (spec.kind == RuleKind::GaussHermite ? 0 : 1);
    const std::vector<int> ns = s.ns.empty() ? geometric_grid(s.n_min, s.n_max, parity) : s.ns;
    for (int n : ns)
        if (spec.kind == RuleKind::GaussHermite &&
            (spec.enforce_parity ? coerce_parity(spec.kind, n) : n) > kMaxGaussHermitePoints)
            throw UsageError("gh sweeps are limited to n <= " + std::to_string(kMaxGaussHermitePoints));

    const auto records = run_sweep(spec, g, ns);
    std::ofstream file;
    if (!s.out.empty())
    {
        file.open(s.out, std::ios::binary | std::ios::trunc);
        if (!file)
            throw std::runtime_error("cannot write '" + s.out + "'");
    }
    std::ostream& out = s.out.empty() ? std::cout : file;
    if (s.fit)
    {
        const RateFit fit = fit_rate(records);
        emit_csv(std::span<const RateFit>(&fit, 1), out);
    }
    else
        emit_csv(records, out);
    return 0;
}

int cmd_wce(const RuleFlags& f, int alpha, std::optional<int> K)
{
    if (alpha < 1)
        throw UsageError("--alpha must be >= 1");
    if (K && *K < 1)
        throw UsageError("--K must be >= 1");
    const std::optional<int> cut = f.alpha ? f.alpha : std::optional<int>(alpha);
    check_rule_flags(f, cut);
    const QuadratureRule rule = f.rule == "gh" ? gh_rule(f.n) : gaussian_trap_rule(f.n, resolve_T(f, cut));
    const int k = K.value_or(default_wce_truncation(rule.size()));
    const WceEstimate est = wce_series(rule, alpha, k);
    std::cout << "rule,n,alpha,K,wce,tail_bound\n";
    std::cout << f.rule << ',' << f.n << ',' << alpha << ',' << est.K << ',' << format_double(est.value) << ','
              << format_double(est.tail_bound) << '\n';
    return 0;
}

int cmd_lowerbound(const RuleFlags& f, int alpha, std::optional<double> delta)
{
    if (alpha < 1)
        throw UsageError("--alpha must be >= 1");
    if (delta)
    {
        if (!(*delta > 0.0 && *delta <= 1.0))
            throw UsageError("--delta must lie in (0,1]");
        std::cout << "delta,alpha,certificate\n";
        std::cout << format_double(*delta) << ',' << alpha << ',' << format_double(gap_certificate(*delta, alpha))
                  << '\n';
        return 0;
    }
    const std::optional<int> cut = f.alpha ? f.alpha : std::optional<int>(alpha);
    check_rule_flags(f, cut);
    if (f.n < 2)
        throw UsageError("--n must be >= 2 for a bump certificate");
    const QuadratureRule rule = f.rule == "gh" ? gh_rule(f.n) : trap_rule(f.n, resolve_T(f, cut));
    const BumpCertificate cert = bump_certificate(rule.nodes, alpha);
    std::cout << "rule,n,alpha,I_h,norm_h,certificate,explicit_bound\n";
    std::cout << f.rule << ',' << f.n << ',' << alpha << ',' << format_double(cert.I_h) << ','
              << format_double(cert.norm_h) << ',' << format_double(cert.ratio) << ',';
    if (f.rule == "gh")
        std::cout << format_double(explicit_lower_constant(alpha) * std::pow(f.n, -0.5 * alpha));
    std::cout << '\n';
    return 0;
}

int cmd_constants(int alpha)
{
    if (alpha < 1)
        throw UsageError("--alpha must be >= 1");
    std::cout << "alpha,name,value\n";
    for (int tau = 0; tau <= alpha; ++tau)
        std::cout << alpha << ",S_tau" << tau << ',' << format_double(S_alpha_tau(alpha, tau)) << '\n';
    std::cout << alpha << ",c_alpha," << format_double(general_lower_constant(alpha)) << '\n';
    std::cout << alpha << ",C_alpha," << format_double(explicit_lower_constant(alpha)) << '\n';
    std::cout << alpha << ",trap_constant," << format_double(trap_theory_constant(alpha)) << '\n';
    return 0;
}

int cmd_fig1(const std::string& dir)
{
    if (dir.empty())
        throw UsageError("--out must name a directory");
    const Fig1Result res = run_fig1(dir);
    emit_csv(std::span<const RateFit>(res.fits), std::cout);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quadrature against the standard Gaussian: Gauss-Hermite and truncated trapezoid"};
    app.require_subcommand(1);

    RuleFlags nodes_flags;
    auto* nodes = app.add_subcommand("nodes", "Print j,node,weight for a rule");
    add_rule_flags(nodes, nodes_flags);

    RuleFlags int_flags;
    std::string int_label = "abs_p1";
    auto* integrate = app.add_subcommand("integrate", "Integrate a corpus function against the Gaussian");
    add_rule_flags(integrate, int_flags);
    integrate->add_option("--f", int_label, "Corpus label (abs_p1, exp_t1, mono_d4, ...)")->capture_default_str();

    SweepFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Convergence sweep over a geometric n grid");
    sweep->add_option("--rule", sweep_flags.rule, "Rule: gh or trap")
        ->check(CLI::IsMember({"gh", "trap"}))
        ->capture_default_str();
    sweep->add_option("--f", sweep_flags.integrand, "Corpus label")->capture_default_str();
    sweep->add_option("--ns", sweep_flags.ns, "Explicit point counts (overrides --n-min/--n-max)");
    sweep->add_option("--n-min", sweep_flags.n_min, "Smallest n of the sqrt(2) grid")->capture_default_str();
    sweep->add_option("--n-max", sweep_flags.n_max, "Largest n of the sqrt(2) grid")->capture_default_str();
    sweep->add_option("--alpha", sweep_flags.alpha, "Trapezoid cut-off smoothness (default: the integrand's)");
    sweep->add_option("--epsilon", sweep_flags.epsilon, "Cut-off parameter epsilon")->capture_default_str();
    sweep->add_flag("--no-parity", sweep_flags.no_parity,
                    "Disable the parity protocol (default on: gh even n, trap odd n)");
    sweep->add_flag("--fit", sweep_flags.fit, "Print the rate fit instead of the rows");
    sweep->add_option("--out", sweep_flags.out, "Write CSV here instead of stdout");

    RuleFlags wce_flags;
    int wce_alpha = 1;
    std::optional<int> wce_K;
    auto* wce = app.add_subcommand("wce", "Worst-case error in the Hermite space");
    add_rule_flags(wce, wce_flags, false);
    wce->add_option("--alpha", wce_alpha, "Smoothness of the space (also the trapezoid cut-off)")
        ->capture_default_str();
    wce->add_option("--K", wce_K, "Series truncation (default max(10000, 8n))");

    RuleFlags lb_flags;
    int lb_alpha = 1;
    std::optional<double> lb_delta;
    auto* lowerbound = app.add_subcommand("lowerbound", "Bump-function lower-bound certificate");
    lowerbound->add_option("--rule", lb_flags.rule, "Rule: gh or trap")
        ->check(CLI::IsMember({"gh", "trap"}))
        ->capture_default_str();
    auto* lb_n = lowerbound->add_option("--n", lb_flags.n, "Number of points");
    lowerbound->add_option("--T", lb_flags.T, "Trapezoid half-width");
    lowerbound->add_option("--epsilon", lb_flags.epsilon, "Cut-off parameter epsilon")->capture_default_str();
    lowerbound->add_option("--alpha", lb_alpha, "Smoothness")->capture_default_str();
    auto* lb_d = lowerbound->add_option("--delta", lb_delta, "Certify a gap of this width instead of a rule");
    lb_n->excludes(lb_d);

    int const_alpha = 1;
    auto* constants = app.add_subcommand("constants", "S_{alpha,tau}, lower-bound and trapezoid constants");
    constants->add_option("--alpha", const_alpha, "Smoothness")->capture_default_str();

    std::string fig1_dir;
    auto* fig1 = app.add_subcommand("fig1", "Write the |x|^p convergence study CSVs");
    fig1->add_option("--out", fig1_dir, "Output directory")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kExitUsage;
    }

    try
    {
        if (*nodes)
            return cmd_nodes(nodes_flags);
        if (*integrate)
            return cmd_integrate(int_flags, int_label);
        if (*sweep)
            return cmd_sweep(sweep_flags);
        if (*wce)
            return cmd_wce(wce_flags, wce_alpha, wce_K);
        if (*lowerbound)
        {
            if (!lb_delta && lb_n->count() == 0)
                throw UsageError("lowerbound needs --n or --delta");
            return cmd_lowerbound(lb_flags, lb_alpha, lb_delta);
        }
        if (*constants)
            return cmd_constants(const_alpha);
        if (*fig1)
            return cmd_fig1(fig1_dir);
    }
    catch (const UsageError& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitUsage;
}
