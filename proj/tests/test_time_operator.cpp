// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdint>
#include <random>

#include <doctest.h>

#include "oracle.hpp"
#include "stochclock/error.hpp"
#include "stochclock/time_operator.hpp"

using namespace stochclock;

namespace
{

ClockParams clock(std::int64_t M, double tau0 = 1.0)
{
    return make_clock_params(1 / tau0, M);
}

double rel(double a, double b)
{
    return std::fabs(a - b) / std::fabs(b);
}

}  // namespace

TEST_CASE("expectation at the origin")
{
    for (auto const& p : {clock(5), clock(1001, 3.7), clock(99999, 0.01),
                          make_clock_params(123.0, std::int64_t{31})})
    {
        CHECK(expected_time_at_origin(p) == 0.0);
    }
    CHECK(std::fabs(expected_time_at_origin(clock(5), Summation::naive)) <= 1e-15);
    CHECK(std::fabs(expected_time_at_origin(clock(1001, 3.7), Summation::naive))
          <= 1e-15);
}

TEST_CASE("diagonal expectations")
{
    auto const p = clock(15, 7.5);  // tau = 0.5, N = 7
    CHECK(p.tau == 0.5);
    CHECK(expected_time(p, 0).exact == 0.0);
    CHECK(expected_time(p, 7).exact == 3.5);
    CHECK(expected_time(p, -7).exact == -3.5);
    CHECK(expected_time(p, 7).finite_m == 3.5 * normalization_value(p));
    CHECK_THROWS_AS(expected_time(p, 8), Error);

    auto const q = clock(2001, 0.37);
    double const unit = expected_time(q, 1).exact;
    for (std::int64_t k = -q.N; k <= q.N; k += 37)
    {
        CHECK(expected_time(q, k).exact
              == doctest::Approx(static_cast<double>(k) * unit).epsilon(1e-15));
    }
}

TEST_CASE("variance summands")
{
    auto const p = clock(5);
    CHECK(variance_term(p, 0) == 0.0);
    CHECK(variance_term(p, 5) == doctest::Approx(0.01 * std::exp(-1.0)).epsilon(1e-15));
    CHECK(variance_term(p, 5) == doctest::Approx(3.6788e-3).epsilon(1e-4));
    for (std::int64_t k = 1; k < 200; k += 7)
    {
        CHECK(variance_term(p, k) == variance_term(p, -k));
    }
}

TEST_CASE("variance series against the brute-force oracle")
{
    SUBCASE("M = 11: summation to |k| = 50 M")
    {
        auto const p = clock(11);
        double const oracle = static_cast<double>(oracle::variance_sum(1, 11, 550));
        CHECK(rel(variance_series(p), oracle) <= 1e-12);
        CHECK(rel(variance_closed_form(p), oracle) <= 1e-12);
        // 40-digit reference
        CHECK(variance_series(p)
              == doctest::Approx(0.09090906505433126927866689).epsilon(1e-15));
    }
    SUBCASE("M = 1001")
    {
        auto const p = clock(1001);
        double const oracle
            = static_cast<double>(oracle::variance_sum(1, 1001, 50 * 1001));
        double const v = variance_series(p);
        CHECK(rel(v, oracle) <= 1e-13);
        CHECK(v == doctest::Approx(9.990010e-4).epsilon(1e-6));
        double const m4 = std::pow(1001.0, 4);
        CHECK(v == doctest::Approx((1 / 1001.0) * (1 - 1 / (240 * m4))).epsilon(1e-15));
        CHECK(rel(variance_series(clock(1001, 2.0)), 4 * v) <= 1e-15);
    }
}

TEST_CASE("closed forms")
{
    auto const big = clock(1'000'001);  // odd neighbour of 1e6
    CHECK(std::fabs(variance_closed_form(big) * 1000001 - 1) <= 4.5e-16);

    for (auto const& p : {clock(11), clock(101, 3.7), big, clock(999'999'999)})
    {
        CHECK(variance_closed_form_printed(p) == variance_closed_form(p) / 2);
    }
    // the printed bracket alone would converge to tau0^2 / 2M
    CHECK(variance_closed_form_printed(big) * 2 * 1000001
          == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("asymptote")
{
    CHECK(variance_asymptotic(clock(1001)) == doctest::Approx(9.99001e-4).epsilon(1e-6));
    CHECK(variance_asymptotic(clock(401, 2.0)) == 4.0 / 401);
    CHECK(variance_asymptotic(clock(10001)) == 1.0 / 10001);
    CHECK(preferred_variance(clock(1'000'001)) == variance_asymptotic(clock(1'000'001)));
    CHECK(preferred_variance(clock(11)) == variance_series(clock(11)));
}

TEST_CASE("standard deviation")
{
    auto const s = std_dev(make_clock_params(1.0, std::int64_t{10001}));
    CHECK(s.sigma_asymptotic == doctest::Approx(1 / std::sqrt(10001.0)).epsilon(1e-15));

    auto const t = std_dev(clock(9999));
    CHECK(t.sigma_exact <= t.sigma_asymptotic);
    CHECK(t.sigma_exact >= t.sigma_asymptotic * (1 - 1e-6));

    auto const u = std_dev(make_clock_params(2.0, std::int64_t{25}));
    CHECK(u.sigma_asymptotic == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(rel(u.sigma_grid_form, u.sigma_asymptotic) <= 1e-15);
}

TEST_CASE("invalid epsilon")
{
    CHECK_THROWS_AS(variance_series(clock(11), 0.0), Error);
    CHECK_THROWS_AS(variance_series(clock(11), 1.0), Error);
    CHECK_THROWS_AS(variance_report(clock(11), -1.0), Error);
}

TEST_CASE("property: closed-form equivalence and asymptotic approach")
{
    for (std::int64_t M : {11, 101, 1001, 10001, 100001})
    {
        for (double tau0 : {0.5, 1.0, 3.7})
        {
            auto const p = clock(M, tau0);
            CHECK(rel(variance_series(p, 1e-13), variance_closed_form(p)) <= 1e-12);
        }
    }

    std::mt19937_64 gen(11);
    std::uniform_int_distribution<std::int64_t> half(5, 500);
    for (int trial = 0; trial < 40; ++trial)
    {
        std::int64_t const M = 2 * half(gen) + 1;
        auto const p = clock(M, 1.7);
        double const M4 = std::pow(static_cast<double>(M), 4);
        double const dev = p.count() * variance_series(p) / (p.tau0 * p.tau0) - 1;
        CHECK(std::fabs(dev) <= 1 / (100 * M4));
        CHECK(dev < 0);
    }
}

TEST_CASE("property: scaling in lambda and monotonicity of sigma")
{
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> log_rate(-3, 3);
    for (std::int64_t M : {11, 301, 4001})
    {
        double const base = variance_series(make_clock_params(1.0, M));
        for (int trial = 0; trial < 10; ++trial)
        {
            double const lambda = std::pow(10.0, log_rate(gen));
            double const v = variance_series(make_clock_params(lambda, M));
            CHECK(rel(v, base / (lambda * lambda)) <= 1e-15);
        }
    }

    double prev = std_dev(clock(3)).sigma_exact;
    for (std::int64_t M = 5; M < 20000; M = 2 * M + 1)
    {
        double const s = std_dev(clock(M)).sigma_exact;
        CHECK(s < prev);
        prev = s;
    }
    prev = 0;
    for (double tau0 : {0.001, 0.1, 1.0, 2.0, 50.0})
    {
        double const s = std_dev(clock(101, tau0)).sigma_exact;
        CHECK(s > prev);
        prev = s;
    }
}

TEST_CASE("variance report")
{
    auto const r = variance_report(clock(1001));
    REQUIRE(r.series_value);
    CHECK(*r.series_value > 0);
    CHECK(*r.series_value < r.asymptotic);
    CHECK(*r.rel_dev_series_vs_closed <= 1e-12);
    CHECK(r.sigma == std_dev(clock(1001)).sigma_exact);
    CHECK(r.sigma == doctest::Approx(std::sqrt(*r.series_value)).epsilon(4.5e-16));
    CHECK(r.closed_form_printed * 2 == r.closed_form);
    CHECK(*r.tail <= 1e-12 * *r.series_value);

    auto const big = variance_report(clock(1'000'001));
    CHECK_FALSE(big.series_value);
    CHECK(big.sigma == std::sqrt(big.asymptotic));
}

TEST_CASE("sigma_exact never rounds above tau0 / sqrt(M)")
{
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> log_lambda(-3, 3);
    std::uniform_int_distribution<std::int64_t> half(1, 5000);
    for (int i = 0; i < 40; ++i)
    {
        auto const p = make_clock_params(std::pow(10.0, log_lambda(gen)),
                                         2 * half(gen) + 1);
        auto const s = std_dev(p);
        CHECK(variance_ratio(p) <= 1);
        CHECK(s.sigma_exact <= s.sigma_asymptotic);
        CHECK(s.sigma_exact
              == doctest::Approx(std::sqrt(variance_series(p))).epsilon(4.5e-16));
    }
}
