#include "ghtrap/study.hpp"

#include "ghtrap/gauss_hermite.hpp"
#include "ghtrap/special.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

namespace ghtrap {

namespace {

double falling_factorial(int m, int k)
{
    double v = 1.0;
    for (int i = 0; i < k; ++i)
        v *= static_cast<double>(m - i);
    return v;
}

double double_factorial_odd(int d) // (d-1)!! for even d
{
    double v = 1.0;
    for (int i = d - 1; i > 1; i -= 2)
        v *= i;
    return v;
}

Integrand exp_linear(double t, const std::string& label)
{
    std::vector<RealFunction> derivs;
    for (int tau = 1; tau <= 8; ++tau)
        derivs.emplace_back([t, tau](double x) { return std::pow(t, tau) * std::exp(t * x); });
    return Integrand(label, [t](double x) { return std::exp(t * x); }, 2, std::move(derivs),
                     std::exp(0.5 * t * t));
}

Integrand monomial(int d)
{
    std::vector<RealFunction> derivs;
    for (int tau = 1; tau <= 8; ++tau)
        derivs.emplace_back([d, tau](double x) {
            return tau > d ? 0.0 : falling_factorial(d, tau) * std::pow(x, d - tau);
        });
    const double exact = (d % 2 == 1) ? 0.0 : double_factorial_odd(d);
    return Integrand("mono_d" + std::to_string(d), [d](double x) { return std::pow(x, d); }, 2,
                     std::move(derivs), exact);
}

} // namespace

Integrand abs_power(int p)
{
    if (p < 1)
        throw std::invalid_argument("abs_power requires p >= 1");
    std::vector<RealFunction> derivs;
    for (int tau = 1; tau <= p; ++tau)
        derivs.emplace_back([p, tau](double x) {
            const double sign = (x < 0.0 && tau % 2 == 1) ? -1.0 : 1.0;
            return sign * falling_factorial(p, tau) * std::pow(std::abs(x), p - tau);
        });
    return Integrand("abs_p" + std::to_string(p), [p](double x) { return std::pow(std::abs(x), p); }, p,
                     std::move(derivs), gaussian_abs_moment(p));
}

std::vector<Integrand> corpus()
{
    std::vector<Integrand> out;
    for (int p : {1, 3, 5})
        out.push_back(abs_power(p));
    out.push_back(exp_linear(0.5, "exp_t0.5"));
    out.push_back(exp_linear(1.0, "exp_t1"));
    for (int d = 1; d <= 8; ++d)
        out.push_back(monomial(d));
    return out;
}

Integrand corpus_entry(const std::string& label)
{
    for (auto& f : corpus())
        if (f.label() == label)
            return f;
    throw std::invalid_argument("unknown integrand '" + label + "'");
}

int coerce_parity(RuleKind kind, int n)
{
    if (kind == RuleKind::GaussHermite && n % 2 != 0)
        return n + 1;
    if (kind == RuleKind::TruncatedTrapezoid && n % 2 == 0)
        return n + 1;
    return n;
}

std::vector<int> geometric_grid(int lo, int hi, int parity)
{
    if (lo < 1 || hi < lo)
        throw std::invalid_argument("geometric_grid requires 1 <= lo <= hi");
    auto fix = [&](long long n) {
        if (parity >= 0 && n % 2 != parity)
            n = (n + 1 <= hi) ? n + 1 : n - 1;
        return static_cast<int>(n);
    };
    std::vector<int> out;
    for (double v = lo; v <= hi * (1.0 + 1e-12); v *= std::sqrt(2.0))
    {
        const int n = fix(std::llround(v));
        if (out.empty() || n > out.back())
            out.push_back(n);
    }
    const int last = fix(hi);
    if (out.back() < last)
        out.push_back(last);
    return out;
}

std::vector<ConvergenceRecord> run_sweep(const SweepSpec& spec, const Integrand& f, std::span<const int> ns)
{
    if (ns.empty())
        throw std::invalid_argument("run_sweep requires at least one point count");
    if (!f.exact_integral())
        throw std::invalid_argument("run_sweep: integrand '" + f.label() + "' has no exact integral");
    if (spec.kind == RuleKind::Custom)
        throw std::invalid_argument("run_sweep supports gh and trap rules only");

    std::vector<int> counts;
    for (int n : ns)
    {
        if (n < 2)
            throw std::invalid_argument("run_sweep requires every n >= 2");
        counts.push_back(spec.enforce_parity ? coerce_parity(spec.kind, n) : n);
    }
    std::sort(counts.begin(), counts.end());
    counts.erase(std::unique(counts.begin(), counts.end()), counts.end());

    const int alpha = spec.alpha.value_or(f.alpha());
    const double exact = *f.exact_integral();

    auto row = [&](int n) {
        ConvergenceRecord rec;
        rec.rule_kind = spec.kind;
        rec.integrand = f.label();
        rec.n = n;
        rec.alpha = alpha;
        try
        {
            double value;
            if (spec.kind == RuleKind::GaussHermite)
                value = apply(gh_rule(n), f);
            else
            {
                const double T = cutoff_T(n, alpha, spec.epsilon);
                rec.T = T;
                rec.epsilon = spec.epsilon;
                value = apply(trap_rule(n, T), [&f](double x) { return f(x) * gaussian_weight(x); });
            }
            rec.abs_error = std::abs(value - exact);
        }
        catch (const std::exception& e)
        {
            throw NumericError("sweep failed for rule " + std::string(to_string(spec.kind)) + ", n = " +
                               std::to_string(n) + ": " + e.what());
        }
        return rec;
    };

    std::vector<std::future<ConvergenceRecord>> pending;
    pending.reserve(counts.size());
    for (int n : counts)
        pending.push_back(std::async(std::launch::async, row, n));
    std::vector<ConvergenceRecord> out;
    out.reserve(counts.size());
    for (auto& p : pending)
        out.push_back(p.get());
    return out;
}

RateFit fit_rate(std::span<const int> ns, std::span<const double> errors)
{
    if (ns.size() != errors.size())
        throw std::invalid_argument("fit_rate: size mismatch");
    std::vector<double> xs;
    std::vector<double> ys;
    RateFit fit;
    fit.n_range = {0, 0};
    for (std::size_t i = 0; i < ns.size(); ++i)
    {
        if (!(errors[i] > kErrorFloor))
            continue;
        xs.push_back(std::log10(static_cast<double>(ns[i])));
        ys.push_back(std::log10(errors[i]));
        if (xs.size() == 1)
            fit.n_range = {ns[i], ns[i]};
        fit.n_range.first = std::min(fit.n_range.first, ns[i]);
        fit.n_range.second = std::max(fit.n_range.second, ns[i]);
    }
    if (xs.size() < 3)
        throw std::invalid_argument("fit_rate needs at least 3 rows above the error floor");

    const double m = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_rate needs at least two distinct n");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return fit;
}

RateFit fit_rate(std::span<const ConvergenceRecord> records)
{
    std::vector<int> ns;
    std::vector<double> errors;
    for (const auto& r : records)
    {
        ns.push_back(r.n);
        errors.push_back(r.abs_error);
    }
    RateFit fit = fit_rate(ns, errors);
    if (!records.empty())
    {
        fit.rule_kind = records.front().rule_kind;
        fit.integrand = records.front().integrand;
    }
    return fit;
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string format_optional(const std::optional<double>& v)
{
    return v ? format_double(*v) : std::string();
}

std::ofstream open_for_write(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::string current;
    for (char c : line)
    {
        if (c == ',')
        {
            fields.push_back(current);
            current.clear();
        }
        else if (c != '\r')
            current.push_back(c);
    }
    fields.push_back(current);
    return fields;
}

double parse_double(const std::string& s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("malformed number '" + s + "'");
    return v;
}

int parse_int(const std::string& s)
{
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("malformed integer '" + s + "'");
    return v;
}

std::optional<double> parse_optional(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    return parse_double(s);
}

void expect_header(std::istream& in, const char* header)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("CSV is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != header)
        throw std::invalid_argument("unexpected CSV header '" + line + "'");
}

} // namespace

void emit_csv(std::span<const ConvergenceRecord> records, std::ostream& out)
{
    std::vector<ConvergenceRecord> sorted(records.begin(), records.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        const auto ka = to_string(a.rule_kind);
        const auto kb = to_string(b.rule_kind);
        if (ka != kb)
            return ka < kb;
        if (a.integrand != b.integrand)
            return a.integrand < b.integrand;
        return a.n < b.n;
    });
    out << kSweepHeader << '\n';
    for (const auto& r : sorted)
        out << to_string(r.rule_kind) << ',' << r.integrand << ',' << r.n << ',' << r.alpha << ','
            << format_optional(r.epsilon) << ',' << format_optional(r.T) << ',' << format_double(r.abs_error)
            << '\n';
}

void emit_csv(std::span<const ConvergenceRecord> records, const std::filesystem::path& path)
{
    auto out = open_for_write(path);
    emit_csv(records, out);
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}

void emit_csv(std::span<const RateFit> fits, std::ostream& out)
{
    std::vector<RateFit> sorted(fits.begin(), fits.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        const auto ka = to_string(a.rule_kind);
        const auto kb = to_string(b.rule_kind);
        if (ka != kb)
            return ka < kb;
        return a.integrand < b.integrand;
    });
    out << kFitHeader << '\n';
    for (const auto& f : sorted)
        out << to_string(f.rule_kind) << ',' << f.integrand << ',' << format_double(f.slope) << ','
            << format_double(f.intercept) << ',' << format_double(f.r_squared) << ',' << f.n_range.first
            << ',' << f.n_range.second << '\n';
}

void emit_csv(std::span<const RateFit> fits, const std::filesystem::path& path)
{
    auto out = open_for_write(path);
    emit_csv(fits, out);
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<ConvergenceRecord> parse_sweep_csv(std::istream& in)
{
    expect_header(in, kSweepHeader);
    std::vector<ConvergenceRecord> out;
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto f = split_fields(line);
        if (f.size() != 7)
            throw std::invalid_argument("sweep CSV row has " + std::to_string(f.size()) + " fields");
        ConvergenceRecord r;
        r.rule_kind = rule_kind_from_string(f[0]);
        r.integrand = f[1];
        r.n = parse_int(f[2]);
        r.alpha = parse_int(f[3]);
        r.epsilon = parse_optional(f[4]);
        r.T = parse_optional(f[5]);
        r.abs_error = parse_double(f[6]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<RateFit> parse_fit_csv(std::istream& in)
{
    expect_header(in, kFitHeader);
    std::vector<RateFit> out;
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto f = split_fields(line);
        if (f.size() != 7)
            throw std::invalid_argument("fit CSV row has " + std::to_string(f.size()) + " fields");
        RateFit r;
        r.rule_kind = rule_kind_from_string(f[0]);
        r.integrand = f[1];
        r.slope = parse_double(f[2]);
        r.intercept = parse_double(f[3]);
        r.r_squared = parse_double(f[4]);
        r.n_range = {parse_int(f[5]), parse_int(f[6])};
        out.push_back(std::move(r));
    }
    return out;
}

Fig1Result run_fig1(const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    const std::vector<int> gh_ns = geometric_grid(16, kMaxGaussHermitePoints, 0);
    const std::vector<int> trap_ns = geometric_grid(17, 2047, 1);

    Fig1Result result;
    for (int p : {1, 3, 5})
    {
        const Integrand f = abs_power(p);
        SweepSpec spec;
        auto gh = run_sweep(spec, f, gh_ns);
        spec.kind = RuleKind::TruncatedTrapezoid;
        auto trap = run_sweep(spec, f, trap_ns);
        result.fits.push_back(fit_rate(gh));
        result.fits.push_back(fit_rate(trap));

        std::vector<ConvergenceRecord> rows = std::move(gh);
        rows.insert(rows.end(), trap.begin(), trap.end());
        const auto path = out_dir / ("fig1_p" + std::to_string(p) + ".csv");
        emit_csv(rows, path);
        result.files.push_back(path);
    }
    const auto fits_path = out_dir / "fig1_fits.csv";
    emit_csv(std::span<const RateFit>(result.fits), fits_path);
    result.files.push_back(fits_path);
    return result;
}

} // namespace ghtrap
