// SPDX-License-Identifier: Apache-2.0
#include "stochclock/time_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "stochclock/error.hpp"

namespace stochclock
{
namespace
{

// Pairs (j, -j) cancel individually, so the window only bounds the work.
constexpr std::int64_t antisymmetric_window = std::int64_t{1} << 20;

void check_direct_range(std::int64_t terms)
{
    if (terms > max_series_terms)
    {
        throw Error(ErrorCode::invalid_count,
                    "direct summation over " + std::to_string(terms)
                        + " terms exceeds the supported limit");
    }
}

double paired_sum(const ClockParams& params, std::int64_t last)
{
    CompensatedSum sum;
    for (std::int64_t n = last; n >= 1; --n)
    {
        sum += (grid_point(params, n) + grid_point(params, -n))
               * interval_probability(params, n);
    }
    sum += grid_point(params, 0) * interval_probability(params, 0);
    return sum.value();
}

// (tau0^2 / 4 M^4) without forming M^4 against tau0^2 directly.
double variance_scale(const ClockParams& params)
{
    double const M2 = params.count() * params.count();
    return params.tau0 * params.tau0 * (0.25 / (M2 * M2));
}

// sum_{k > K} k^2 q^k with a = K + 1:
//   q^a [a^2/(1-q) + 2 a q/(1-q)^2 + q(1+q)/(1-q)^3]
double squared_index_tail(double M, std::int64_t K)
{
    double const q = std::exp(-1 / M);
    double const d = one_minus_exp_neg(1 / M);
    double const a = static_cast<double>(K + 1);
    double const qa = std::exp(-a / M);
    return qa * (a * a / d + 2 * a * q / (d * d) + q * (1 + q) / (d * d * d));
}

// one-sided sum_{k >= 1} k^2 q^k = q (1 + q) / (1 - q)^3
double squared_index_total(double M)
{
    double const q = std::exp(-1 / M);
    double const d = one_minus_exp_neg(1 / M);
    return q * (1 + q) / (d * d * d);
}

std::int64_t variance_truncation_index(double M, double epsilon)
{
    double const total = squared_index_total(M);
    auto within = [&](std::int64_t K) {
        return squared_index_tail(M, K) <= epsilon * total;
    };

    std::int64_t hi = std::max<std::int64_t>(1, static_cast<std::int64_t>(M));
    while (!within(hi))
    {
        if (hi > max_series_terms / 2)
        {
            check_direct_range(2 * hi);
        }
        hi *= 2;
    }
    std::int64_t lo = 0;  // invariant: !within(lo) or lo == 0, within(hi)
    while (hi - lo > 1)
    {
        std::int64_t const mid = lo + (hi - lo) / 2;
        (within(mid) ? hi : lo) = mid;
    }
    return hi;
}

struct UnitSeries
{
    long double partial;  // sum_{k=1}^{K} k^2 q^k
    double tail;          // sum_{k > K} k^2 q^k
    std::int64_t K;
};

// Extended-precision Neumaier accumulation: the unit series sits only
// 1/(240 M^4) below its asymptote, so bounds like sigma <= tau0/sqrt(M)
// need the result good to well under one binary64 ulp.
UnitSeries unit_series(const ClockParams& params, double epsilon)
{
    if (!(epsilon > 0 && epsilon < 1))
    {
        throw Error(ErrorCode::invalid_epsilon,
                    "tail bound epsilon must lie in (0, 1)");
    }
    double const M = params.count();
    std::int64_t const K = variance_truncation_index(M, epsilon);

    long double sum = 0;
    long double carry = 0;
    long double const inv_m = 1.0L / params.count();
    for (std::int64_t k = K; k >= 1; --k)
    {
        long double const kk = static_cast<long double>(k);
        long double const term = kk * kk * std::exp(-kk * inv_m);
        long double const t = sum + term;
        carry += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term
                                                   : (term - t) + sum;
        sum = t;
    }
    return {sum + carry, squared_index_tail(M, K), K};
}

TruncatedSum scaled_series(const ClockParams& params, const UnitSeries& u)
{
    // Both signs of k contribute equally; k = 0 contributes nothing.
    double const scale = 2 * variance_scale(params);
    TruncatedSum result;
    result.K = u.K;
    result.partial = scale * static_cast<double>(u.partial);
    result.tail = scale * u.tail;
    return result;
}

// M Var / tau0^2 = (1 / 2M^3) sum_{k >= 1} k^2 q^k
double unit_ratio(const ClockParams& params, const UnitSeries& u)
{
    long double const M = params.count();
    return static_cast<double>((u.partial + u.tail) / (2 * M * M * M));
}

}  // namespace

double expected_time_at_origin(const ClockParams& params, Summation mode)
{
    check_direct_range(params.N);
    if (mode == Summation::paired)
    {
        return paired_sum(params, params.N);
    }

    double sum = 0;
    for (std::int64_t n = -params.N; n <= params.N; ++n)
    {
        sum += grid_point(params, n) * interval_probability(params, n);
    }
    return sum;
}

Expectation expected_time(const ClockParams& params, std::int64_t k)
{
    double const tau_k = grid_point(params, k);

    // Shifted sum: sum_n tau^(n-k) p(n-k) + tau^k sum_n p(n-k). The first
    // part is antisymmetric and vanishes; the second is tau^k times the norm.
    double const antisymmetric
        = paired_sum(params, std::min(params.N, antisymmetric_window));
    return {antisymmetric + tau_k, tau_k * normalization_value(params)};
}

double variance_term(const ClockParams& params, std::int64_t k)
{
    double const kk = static_cast<double>(k);
    return variance_scale(params) * kk * kk
           * std::exp(-static_cast<double>(std::llabs(k)) / params.count());
}

TruncatedSum variance_sum(const ClockParams& params, double epsilon)
{
    return scaled_series(params, unit_series(params, epsilon));
}

double variance_ratio(const ClockParams& params, double epsilon)
{
    return unit_ratio(params, unit_series(params, epsilon));
}
double variance_series(const ClockParams& params, double epsilon)
{
    return variance_sum(params, epsilon).value();
}

double variance_closed_form_printed(const ClockParams& params)
{
    double const M = params.count();
    double const e1 = std::exp(1 / M);
    double const Md = M * std::expm1(1 / M);
    // (tau0^2 / 4M^4) e1 (1 + e1) / (e1 - 1)^3, regrouped around M (e1 - 1) ~ 1
    return params.tau0 * params.tau0
           * (e1 * (1 + e1) / (4 * Md * Md * Md) / M);
}

double variance_closed_form(const ClockParams& params)
{
    return 2 * variance_closed_form_printed(params);
}

double variance_asymptotic(const ClockParams& params)
{
    return params.tau0 * params.tau0 / params.count();
}

double preferred_variance(const ClockParams& params, double epsilon)
{
    return params.M <= exact_series_max_count ? variance_series(params, epsilon)
                                              : variance_asymptotic(params);
}

StdDevResult std_dev(const ClockParams& params, double epsilon)
{
    StdDevResult r;
    r.sigma_asymptotic = params.tau0 / std::sqrt(params.count());
    r.sigma_exact = r.sigma_asymptotic * std::sqrt(variance_ratio(params, epsilon));
    r.sigma_grid_form = params.tau * std::sqrt(params.count());
    if (std::fabs(r.sigma_grid_form - r.sigma_asymptotic)
        > 1e-15 * r.sigma_asymptotic)
    {
        throw Error(ErrorCode::invalid_config,
                    "tau0/sqrt(M) and tau*sqrt(M) disagree beyond 1e-15");
    }
    return r;
}

VarianceReport variance_report(const ClockParams& params, double epsilon)
{
    if (!(epsilon > 0 && epsilon < 1))
    {
        throw Error(ErrorCode::invalid_epsilon,
                    "tail bound epsilon must lie in (0, 1)");
    }
    VarianceReport r;
    r.params = params;
    r.epsilon = epsilon;
    r.closed_form_printed = variance_closed_form_printed(params);
    r.closed_form = 2 * r.closed_form_printed;
    r.asymptotic = variance_asymptotic(params);
    r.sigma_asymptotic = params.tau0 / std::sqrt(params.count());

    if (params.M <= exact_series_max_count)
    {
        UnitSeries const u = unit_series(params, epsilon);
        TruncatedSum const s = scaled_series(params, u);
        r.truncation_index = s.K;
        r.tail = s.tail;
        r.series_value = s.value();
        r.sigma = r.sigma_asymptotic * std::sqrt(unit_ratio(params, u));
        r.rel_dev_series_vs_closed
            = std::fabs(*r.series_value - r.closed_form) / r.closed_form;
        r.rel_dev_vs_asymptotic = *r.series_value / r.asymptotic - 1;
    }
    else
    {
        r.sigma = std::sqrt(r.asymptotic);
    }
    return r;
}

}  // namespace stochclock
