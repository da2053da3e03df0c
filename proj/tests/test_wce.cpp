#include "doctest.h"

#include "ghtrap/gauss_hermite.hpp"
#include "ghtrap/special.hpp"
#include "ghtrap/spaces.hpp"
#include "ghtrap/trapezoid.hpp"
#include "ghtrap/wce.hpp"
#include "oracles.hpp"

#include <array>
#include <cmath>
#include <random>

using namespace ghtrap;
using doctest::Approx;

TEST_CASE("default truncation")
{
    CHECK(default_wce_truncation(8) == 10000);
    CHECK(default_wce_truncation(1250) == 10000);
    CHECK(default_wce_truncation(2000) == 16000);
}

TEST_CASE("gauss-hermite defects vanish up to degree 2n-1")
{
    for (int n = 1; n <= 20; ++n)
    {
        const auto d = rule_hermite_defects(gh_rule(n), 4 * n);
        for (int k = 0; k <= 2 * n - 1; ++k)
            CHECK(std::abs(d[k]) <= 1e-10);
        CHECK(std::abs(d[2 * n]) > 1e-6);
    }
}

TEST_CASE("wce_series basics")
{
    const auto rule = gh_rule(10);
    const auto est = wce_series(rule, 1, 200);
    CHECK(est.value > 0.0);
    CHECK(est.K == 200);
    CHECK(est.alpha == 1);
    CHECK(est.tail_bound > 0.0);

    // the k = 0 term is (1 - sum w)^2 and vanishes for a normalised rule
    const auto d = rule_hermite_defects(rule, 1);
    CHECK(std::abs(d[0]) < 1e-15);

    // brute-force series with the monic recurrence He_{k+1} = x He_k - k He_{k-1}
    double sq = 0.0;
    for (int k = 1; k <= 60; ++k)
    {
        double s = 0.0;
        for (std::size_t j = 0; j < rule.size(); ++j)
        {
            const double x = rule.nodes[j];
            double a = 1.0;
            double b = x;
            for (int m = 1; m < k; ++m)
            {
                const double c = x * b - m * a;
                a = b;
                b = c;
            }
            s += rule.weights[j] * b / std::exp(0.5 * std::lgamma(k + 1.0));
        }
        sq += r_alpha(1, k) * s * s;
    }
    CHECK(wce_series(rule, 1, 60).value == Approx(std::sqrt(sq)).epsilon(1e-9));

    CHECK_THROWS_AS((void)wce_series(rule, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS((void)wce_series(rule, 1, 0), std::invalid_argument);
}

TEST_CASE("wce_series is non-decreasing in K")
{
    for (int alpha : {1, 2})
    {
        const auto rule = gh_rule(12);
        double prev = 0.0;
        for (int K : {1, 10, 23, 24, 25, 60, 300, 2000})
        {
            const double v = wce_series(rule, alpha, K).value;
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("wce of a rule with a wrong total mass")
{
    const auto r = make_rule({0.0}, {0.5});
    // k = 0 contributes (1 - 0.5)^2, odd modes vanish at 0
    const auto est = wce_series(r, 1, 1);
    CHECK(est.value == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("overflowing folded weights are reported")
{
    const auto r = make_rule({-60.0, 60.0}, {0.5, 0.5});
    CHECK_THROWS_AS((void)wce_series(r, 1, 10), NumericError);
}

TEST_CASE("bump certificate on a single interval")
{
    for (int alpha : {1, 2, 3})
    {
        const std::array<double, 2> nodes{0.0, 1.0};
        const auto cert = bump_certificate(nodes, alpha);
        const auto ref = oracle::bump_on_interval(0.0, 1.0, alpha);
        CHECK(cert.I_h == Approx(ref.integral).epsilon(1e-12));
        CHECK(cert.norm_h == Approx(ref.norm).epsilon(1e-12));
        CHECK(cert.ratio == Approx(ref.integral / ref.norm).epsilon(1e-12));
        CHECK(cert.n == 2);
        CHECK(cert.alpha == alpha);
    }
    // h(1/2) = (1/2)^{2 alpha}
    CHECK(oracle::horner(oracle::bump_polynomial(1), 0.5) == 0.25);
}

TEST_CASE("bump certificate on several intervals")
{
    const std::vector<double> nodes{-2.5, -0.7, 0.1, 1.3, 4.0};
    for (int alpha : {1, 2})
    {
        double I = 0.0;
        double N2 = 0.0;
        for (std::size_t j = 0; j + 1 < nodes.size(); ++j)
        {
            const auto b = oracle::bump_on_interval(nodes[j], nodes[j + 1], alpha);
            I += b.integral;
            N2 += b.norm * b.norm;
        }
        const auto cert = bump_certificate(nodes, alpha);
        CHECK(cert.I_h == Approx(I).epsilon(1e-11));
        CHECK(cert.norm_h == Approx(std::sqrt(N2)).epsilon(1e-11));
    }
}

TEST_CASE("bump certificate preconditions")
{
    CHECK_THROWS_AS((void)bump_certificate(std::vector<double>{0.0, 0.0, 1.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)bump_certificate(std::vector<double>{1.0, 0.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)bump_certificate(std::vector<double>{1.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)bump_certificate(std::vector<double>{0.0, 1.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)bump_certificate(std::vector<double>{60.0, 61.0}, 1), NumericError);
}

TEST_CASE("bump certificate is a lower bound for any weights on the nodes")
{
    const auto nodes = gh_rule(16).nodes;
    const double cert = bump_certificate(nodes, 1).ratio;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 0.2);
    for (int trial = 0; trial < 5; ++trial)
    {
        std::vector<double> w(nodes.size());
        for (auto& x : w)
            x = u(rng);
        CHECK(wce_series(make_rule(nodes, w), 1, 10000).value >= cert);
    }
    CHECK(wce_series(gh_rule(16), 1, 10000).value >= cert);
}

TEST_CASE("gap certificate")
{
    const std::array<double, 2> unit{0.0, 1.0};
    CHECK(gap_certificate(1.0, 1) == bump_certificate(unit, 1).ratio);

    const auto ref = oracle::bump_on_interval(0.0, 0.5, 2);
    CHECK(gap_certificate(0.5, 2) == Approx(ref.integral / ref.norm).epsilon(1e-12));

    for (int alpha : {1, 2})
        for (double d : {0.125, 0.0625})
        {
            const double r = gap_certificate(d, alpha) / gap_certificate(d / 2, alpha);
            CHECK(std::abs(r / std::pow(2.0, alpha + 0.5) - 1.0) < 0.05);
        }
    CHECK_THROWS_AS((void)gap_certificate(0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)gap_certificate(1.5, 1), std::invalid_argument);
}

TEST_CASE("S_alpha_tau")
{
    CHECK(S_alpha_tau(1, 0) == Approx(1.0 / 30.0).epsilon(1e-15));
    CHECK(S_alpha_tau(1, 1) == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(S_alpha_tau(2, 0) == Approx(1.0 / 630.0).epsilon(1e-15));
    for (int alpha = 1; alpha <= 4; ++alpha)
        for (int tau = 0; tau <= alpha; ++tau)
            CHECK(S_alpha_tau(alpha, tau) == Approx(oracle::S_alpha_tau(alpha, tau)).epsilon(1e-10));
    // exact arithmetic keeps large alpha sane
    CHECK(S_alpha_tau(12, 0) > 0.0);
    CHECK(S_alpha_tau(12, 12) > 0.0);
    CHECK_THROWS_AS((void)S_alpha_tau(2, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)S_alpha_tau(2, -1), std::invalid_argument);
}

TEST_CASE("explicit lower constant")
{
    const double c1 = (1.0 / 6.0) * std::pow(2.0 * oracle::pi, -0.25) / std::sqrt(11.0 / 30.0);
    CHECK(general_lower_constant(1) == Approx(c1).epsilon(1e-14));

    const double mass = 2.0 / std::sqrt(oracle::pi) *
                        oracle::simpson([](double t) { return std::exp(-t * t); }, 3.0, 13.0 / 3.0, 1e-18);
    const double C1 = c1 * std::pow(oracle::pi, 0.25) * mass / std::pow(2.0, 3.5);
    CHECK(explicit_lower_constant(1) == Approx(C1).epsilon(1e-10));

    for (int a = 1; a <= 5; ++a)
        CHECK(explicit_lower_constant(a + 1) < explicit_lower_constant(a));

    CHECK(bump_certificate(gh_rule(64).nodes, 1).ratio >= explicit_lower_constant(1) / 8.0);

    for (int n : {8, 32, 128})
        for (int a : {1, 2})
        {
            const auto est = wce_series(gh_rule(n), a);
            CHECK(est.value + est.tail_bound >= explicit_lower_constant(a) * std::pow(n, -0.5 * a));
        }
}

TEST_CASE("trapezoid theory constant")
{
    CHECK(trap_theory_constant(1) == Approx(2.0 / std::sqrt(6.0)).epsilon(1e-12));
    CHECK(trap_theory_constant(2) == Approx(2.0 / std::sqrt(90.0)).epsilon(1e-12));
    CHECK(trap_theory_constant(1) == Approx(0.81649658).epsilon(1e-8));
    for (int a = 6; a <= 12; ++a)
        CHECK(trap_theory_constant(a + 1) / trap_theory_constant(a) == Approx(1.0 / oracle::pi).epsilon(0.01));
}
