// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "cli_runner.hpp"
#include "ghtrap/gauss_hermite.hpp"
#include "ghtrap/spaces.hpp"
#include "ghtrap/special.hpp"
#include "ghtrap/study.hpp"
#include "ghtrap/trapezoid.hpp"
#include "ghtrap/wce.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ghtrap;

namespace {

struct Outcome
{
    bool pass = true;
    std::string detail;
};

class Check
{
public:
    void require(bool ok, const std::string& what)
    {
        if (!ok && failures_++ < 5)
            notes_ += (notes_.empty() ? "" : "; ") + what;
    }
    void note(const std::string& s) { info_ += (info_.empty() ? "" : ", ") + s; }
    [[nodiscard]] Outcome outcome() const
    {
        Outcome o;
        o.pass = failures_ == 0;
        o.detail = o.pass ? info_ : notes_ + (failures_ > 5 ? " (+" + std::to_string(failures_ - 5) + " more)" : "");
        return o;
    }

private:
    int failures_ = 0;
    std::string notes_;
    std::string info_;
};

std::string fmt(double v, int prec = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

template <class F>
Outcome timed(double limit_s, F&& body, double& elapsed)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = body();
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && elapsed >= limit_s)
    {
        o.pass = false;
        o.detail += " runtime " + fmt(elapsed) + " s exceeds " + fmt(limit_s) + " s";
    }
    return o;
}

Outcome ac1()
{
    Check c;
    const auto r1 = gh_rule(1);
    c.require(r1.size() == 1 && std::abs(r1.nodes[0]) <= 1e-13 && std::abs(r1.weights[0] - 1.0) <= 1e-13, "n=1");
    const auto r2 = gh_rule(2);
    c.require(std::abs(r2.nodes[0] + 1) <= 1e-13 && std::abs(r2.nodes[1] - 1) <= 1e-13 &&
                  std::abs(r2.weights[0] - 0.5) <= 1e-13 && std::abs(r2.weights[1] - 0.5) <= 1e-13,
              "n=2");
    const auto r3 = gh_rule(3);
    const double s3 = std::sqrt(3.0);
    c.require(std::abs(r3.nodes[0] + s3) <= 1e-13 && std::abs(r3.nodes[1]) <= 1e-13 &&
                  std::abs(r3.nodes[2] - s3) <= 1e-13 && std::abs(r3.weights[0] - 1.0 / 6) <= 1e-13 &&
                  std::abs(r3.weights[1] - 2.0 / 3) <= 1e-13 && std::abs(r3.weights[2] - 1.0 / 6) <= 1e-13,
              "n=3");
    double worst = 0.0;
    for (int n = 1; n <= 30; ++n)
    {
        const auto rule = gh_rule(n);
        for (int d = 0; d <= 2 * n - 1; ++d)
        {
            const double q = apply(rule, [d](double x) { return std::pow(x, d); });
            const double exact = oracle::gaussian_moment(d);
            const double err = exact == 0.0 ? std::abs(q) / 1e-12 : std::abs(q - exact) / (1e-10 * exact);
            worst = std::max(worst, err);
            c.require(err <= 1.0, "n=" + std::to_string(n) + " d=" + std::to_string(d));
        }
    }
    c.note("worst exactness error " + fmt(worst) + " of tolerance");
    return c.outcome();
}

Outcome ac2()
{
    Check c;
    const double log_min = std::log(std::numeric_limits<double>::denorm_min());
    double worst_sym = 0.0;
    double worst_sum = 0.0;
    int underflowed = 0;
    for (int n = 2; n <= 500; ++n)
    {
        const auto rule = gh_rule(n);
        const std::string tag = "n=" + std::to_string(n);
        const double s = std::sqrt(n + 0.5);
        const auto gaps = spacing_stats(rule);
        c.require(oracle::pi / s < gaps.min_gap && gaps.min_gap <= std::sqrt(10.5) / s, tag + " spacing");

        const auto& x = rule.nodes; // x[m-1] is the m-th node
        if (n % 2 == 1)
        {
            const int mid = (n + 1) / 2;
            c.require(x[mid - 1] == 0.0, tag + " middle node");
            for (int j = 1; j <= (n - 1) / 2; ++j)
            {
                const double v = x[mid + j - 1];
                c.require(j * oracle::pi / s < v && v < (4.0 * j + 3.0) / s, tag + " odd bound j=" + std::to_string(j));
            }
        }
        else
        {
            for (int j = 1; j <= n / 2; ++j)
            {
                const double v = x[n / 2 + j - 1];
                c.require((j - 0.5) * oracle::pi / s < v && v < (4.0 * j + 1.0) / s,
                          tag + " even bound j=" + std::to_string(j));
            }
        }

        CompensatedSum sum;
        for (std::size_t j = 0; j < rule.size(); ++j)
        {
            // positive: representable weights are > 0, the rest carry a finite
            // log-weight below the smallest subnormal
            const double lw = rule.log_weights[j];
            const bool positive =
                std::isfinite(lw) && (rule.weights[j] > 0.0 || (rule.weights[j] == 0.0 && lw < log_min));
            if (rule.weights[j] == 0.0)
                ++underflowed;
            c.require(positive, tag + " weight positivity");
            worst_sym = std::max(worst_sym, std::abs(x[j] + x[rule.size() - 1 - j]));
            sum.add(rule.weights[j]);
        }
        worst_sum = std::max(worst_sum, std::abs(sum.value() - 1.0));
    }
    c.require(worst_sym <= 1e-13, "symmetry " + fmt(worst_sym));
    c.require(worst_sum <= 1e-13, "sum of weights off by " + fmt(worst_sum));
    c.note("max |sum w - 1| " + fmt(worst_sum) + ", max asymmetry " + fmt(worst_sym) + ", " +
           std::to_string(underflowed) + " weights below the double range kept in log form");
    return c.outcome();
}

Outcome ac3()
{
    Check c;
    const std::vector<int> ns{8, 16, 32, 64, 128, 256};
    for (int alpha : {1, 2, 3})
    {
        std::vector<double> vals;
        for (int n : ns)
        {
            const auto rule = gh_rule(n);
            vals.push_back(wce_series(rule, alpha, std::max(10000, 8 * n)).value);
        }
        const auto fit = fit_rate(ns, vals);
        c.require(std::abs(fit.slope + 0.5 * alpha) <= 0.15,
                  "alpha=" + std::to_string(alpha) + " slope " + fmt(fit.slope));
        c.note("alpha=" + std::to_string(alpha) + " slope " + fmt(fit.slope));
    }
    return c.outcome();
}

Outcome ac4()
{
    Check c;
    const std::vector<int> ns{8, 16, 32, 64, 128, 256, 512};
    for (int alpha : {1, 2})
    {
        const double C = explicit_lower_constant(alpha);
        std::vector<double> vals;
        double min_margin = std::numeric_limits<double>::infinity();
        for (int n : ns)
        {
            const double r = bump_certificate(gh_rule(n).nodes, alpha).ratio;
            vals.push_back(r);
            const double bound = C * std::pow(n, -0.5 * alpha);
            min_margin = std::min(min_margin, r / bound);
            c.require(r >= bound, "alpha=" + std::to_string(alpha) + " n=" + std::to_string(n) + " below C n^{-a/2}");
        }
        const auto fit = fit_rate(ns, vals);
        c.require(std::abs(fit.slope + 0.5 * alpha) <= 0.2,
                  "alpha=" + std::to_string(alpha) + " slope " + fmt(fit.slope));
        c.note("alpha=" + std::to_string(alpha) + " slope " + fmt(fit.slope) + " min cert/bound " + fmt(min_margin));
    }
    return c.outcome();
}

Outcome ac5()
{
    Check c;
    for (int alpha : {1, 2})
        for (double d : {1.0 / 8, 1.0 / 16})
        {
            const double r = gap_certificate(d, alpha) / gap_certificate(d / 2, alpha);
            const double target = std::pow(2.0, alpha + 0.5);
            const double rel = std::abs(r / target - 1.0);
            c.require(rel <= 0.05, "alpha=" + std::to_string(alpha) + " delta=" + fmt(d) + " ratio " + fmt(r));
            c.note("a=" + std::to_string(alpha) + ",d=" + fmt(d) + ": " + fmt(r, 6));
        }
    return c.outcome();
}

Outcome ac6()
{
    Check c;
    const auto dir = std::filesystem::temp_directory_path() / "ghtrap_acceptance_fig1";
    std::filesystem::remove_all(dir);
    const auto res = run_cli("fig1 --out " + dir.string());
    c.require(res.exit_code == 0, "fig1 exit code " + std::to_string(res.exit_code));
    if (res.exit_code != 0)
        return c.outcome();
    std::ifstream in(dir / "fig1_fits.csv");
    const auto fits = parse_fit_csv(in);
    auto slope = [&](RuleKind k, int p) {
        for (const auto& f : fits)
            if (f.rule_kind == k && f.integrand == "abs_p" + std::to_string(p))
                return f.slope;
        return std::numeric_limits<double>::quiet_NaN();
    };
    for (int p : {1, 3})
    {
        const double gh = slope(RuleKind::GaussHermite, p);
        const double tr = slope(RuleKind::TruncatedTrapezoid, p);
        c.require(std::abs(gh + (0.5 * p + 0.5)) <= 0.25, "p=" + std::to_string(p) + " gh slope " + fmt(gh));
        c.require(tr <= -(p + 0.4), "p=" + std::to_string(p) + " trap slope " + fmt(tr));
        c.note("p=" + std::to_string(p) + " gh " + fmt(gh) + " trap " + fmt(tr));
    }
    const double tr5 = slope(RuleKind::TruncatedTrapezoid, 5);
    c.require(tr5 <= -4.5, "p=5 trap slope " + fmt(tr5));
    c.note("p=5 trap " + fmt(tr5));
    for (const char* name : {"fig1_p1.csv", "fig1_p3.csv", "fig1_p5.csv"})
        c.require(std::filesystem::exists(dir / name), std::string(name) + " missing");
    std::filesystem::remove_all(dir);
    return c.outcome();
}

Outcome ac7()
{
    Check c;
    std::vector<int> ns;
    for (int n = 33; n <= 4097; n += 2)
        ns.push_back(n);
    const double eps = std::numeric_limits<double>::epsilon();
    double worst = 0.0;
    for (const auto& f : corpus())
    {
        const int alpha = f.alpha();
        const double exact = *f.exact_integral();
        std::vector<double> s(ns.size(), std::numeric_limits<double>::quiet_NaN());
        for (std::size_t i = 0; i < ns.size(); ++i)
        {
            const int n = ns[i];
            const auto rule = trap_rule(n, cutoff_T(n, alpha, kDefaultEpsilon));
            CompensatedSum q;
            double mag = 0.0;
            for (double x : rule.nodes)
            {
                const double v = rule.weights[0] * f(x) * gaussian_weight(x);
                q.add(v);
                mag += std::abs(v);
            }
            const double err = std::abs(q.value() - exact);
            // rounding floor of the sum itself
            if (err <= std::max(kErrorFloor, 16.0 * eps * mag))
                continue;
            s[i] = err * std::pow(n, alpha) / std::pow(std::log(n), 0.5 * alpha + 0.25);
        }
        // upper envelope: running max from the right over unsaturated rows
        std::vector<double> env(ns.size(), 0.0);
        double run = 0.0;
        for (std::size_t i = ns.size(); i-- > 0;)
        {
            if (!std::isnan(s[i]))
                run = std::max(run, s[i]);
            env[i] = run;
        }
        const std::size_t third = ns.size() / 3;
        double lead = 0.0;
        double trail = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < ns.size(); ++i)
        {
            if (std::isnan(s[i]))
                continue;
            finite = finite && std::isfinite(s[i]);
            if (i < third)
                lead = std::max(lead, s[i]);
            if (i >= ns.size() - third)
                trail = std::max(trail, s[i]);
        }
        const std::string tag = f.label() + " (alpha " + std::to_string(alpha) + ")";
        c.require(finite && std::isfinite(env.front()), tag + " non-finite");
        if (lead == 0.0)
        {
            // saturated from the start: bounded by the rounding floor
            c.require(trail == 0.0, tag + " leading third saturated but trailing third not");
            continue;
        }
        const double ratio = trail / lead;
        worst = std::max(worst, ratio);
        c.require(ratio <= 10.0, tag + " trailing/leading " + fmt(ratio));
    }
    c.note("worst trailing/leading envelope ratio " + fmt(worst));
    return c.outcome();
}

Outcome ac8()
{
    Check c;
    double worst_s = 0.0;
    for (int alpha = 1; alpha <= 4; ++alpha)
        for (int tau = 0; tau <= alpha; ++tau)
        {
            const double ref = oracle::S_alpha_tau(alpha, tau);
            const double rel = std::abs(S_alpha_tau(alpha, tau) - ref) / ref;
            worst_s = std::max(worst_s, rel);
            c.require(rel <= 1e-10, "S(" + std::to_string(alpha) + "," + std::to_string(tau) + ") rel " + fmt(rel));
        }
    double worst_id = 0.0;
    for (const auto& f : corpus())
    {
        if (f.label().rfind("abs_", 0) == 0)
            continue;
        for (int k = 0; k <= 10; ++k)
        {
            const double r = coeff_identity_residual(f, k);
            worst_id = std::max(worst_id, r);
            c.require(r <= 1e-8, f.label() + " k=" + std::to_string(k) + " residual " + fmt(r));
        }
    }
    const double t1 = std::abs(trap_theory_constant(1) - 2.0 / std::sqrt(6.0));
    const double t2 = std::abs(trap_theory_constant(2) - 2.0 / std::sqrt(90.0));
    c.require(t1 <= 1e-12 && t2 <= 1e-12, "trap constants off by " + fmt(t1) + ", " + fmt(t2));
    c.note("S rel " + fmt(worst_s) + ", identity residual " + fmt(worst_id) + ", trap constants " +
           fmt(std::max(t1, t2)));
    return c.outcome();
}

Outcome ac9()
{
    Check c;
    const auto gh = gh_rule(32);
    const double cert = bump_certificate(gh.nodes, 1).ratio;
    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> perturb(0.0, 0.1);
    std::exponential_distribution<double> expo(1.0);
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 10; ++trial)
    {
        std::vector<double> w(gh.size());
        double total = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j)
        {
            // first half: GH weights with lognormal jitter; second half: flat Dirichlet
            w[j] = trial < 5 ? gh.weights[j] * std::exp(perturb(rng)) : expo(rng);
            total += w[j];
        }
        for (auto& v : w)
            v /= total;
        const double e = wce_series(make_rule(gh.nodes, w), 1, 10000).value;
        min_ratio = std::min(min_ratio, e / cert);
        c.require(e >= 0.9 * cert, "trial " + std::to_string(trial) + " wce " + fmt(e) + " < 0.9 cert " + fmt(cert));
    }
    c.note("certificate " + fmt(cert) + ", min wce/certificate " + fmt(min_ratio));
    return c.outcome();
}

} // namespace

int main()
{
    struct Item
    {
        const char* name;
        const char* title;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Item> items{
        {"AC1", "gauss-hermite nodes, weights and exactness", 0, ac1},
        {"AC2", "node spacing and location bounds, weights", 0, ac2},
        {"AC3", "wce rate of gauss-hermite", 60, ac3},
        {"AC4", "bump lower-bound certificate", 0, ac4},
        {"AC5", "gap certificate scaling", 0, ac5},
        {"AC6", "fig1 slopes", 60, ac6},
        {"AC7", "trapezoid rate envelope", 0, ac7},
        {"AC8", "space machinery", 0, ac8},
        {"AC9", "weights cannot beat the node certificate", 0, ac9},
    };
    int failed = 0;
    for (const auto& item : items)
    {
        double elapsed = 0.0;
        Outcome o;
        try
        {
            o = timed(item.limit_s, item.run, elapsed);
        }
        catch (const std::exception& e)
        {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass)
            ++failed;
        std::printf("%s %s  %s  [%s s]  %s\n", item.name, o.pass ? "PASS" : "FAIL", item.title, fmt(elapsed, 3).c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(items.size()) - failed, items.size());
    return failed == 0 ? 0 : 1;
}
