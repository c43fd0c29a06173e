// SPDX-License-Identifier: Apache-2.0
#include "stochclock/transition_profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "stochclock/error.hpp"

namespace stochclock
{
namespace
{

void check_epsilon(double epsilon)
{
    if (!(epsilon > 0 && epsilon < 1))
    {
        throw Error(ErrorCode::invalid_epsilon,
                    "tail bound epsilon must lie in (0, 1)");
    }
}

double decay_factor(const ClockParams& params, std::int64_t n)
{
    return std::exp(-static_cast<double>(std::llabs(n)) / params.count());
}

}  // namespace

double decay_density(const ClockParams& params, double t, double t0)
{
    if (!(t >= t0))
    {
        throw Error(ErrorCode::time_ordering,
                    "decay density requires t >= t0");
    }
    return params.lambda * std::exp(-params.lambda * (t - t0));
}

double interval_probability_raw(const ClockParams& params, std::int64_t n)
{
    if (n < 1)
    {
        throw Error(ErrorCode::nonpositive_index,
                    "one-sided interval probability needs n >= 1, got "
                        + std::to_string(n));
    }
    return decay_factor(params, n) / params.count();
}

double interval_probability(const ClockParams& params, std::int64_t n)
{
    return decay_factor(params, n) / (2 * params.count());
}

double normalization_value(const ClockParams& params)
{
    double const M = params.count();
    double const d = one_minus_exp_neg(1 / M);
    return (2 - d) / (2 * M * d);
}

double profile_tail(const ClockParams& params, std::int64_t K)
{
    double const M = params.count();
    return std::exp(-static_cast<double>(K + 1) / M)
           / (M * one_minus_exp_neg(1 / M));
}

std::int64_t truncation_index(const ClockParams& params, double epsilon)
{
    check_epsilon(epsilon);
    double const M = params.count();

    // tail(K) = exp(-(K+1)/M) / (M d) <= eps  <=>  K + 1 >= -M ln(eps M d)
    double const bound = -M * std::log(epsilon * M * one_minus_exp_neg(1 / M));
    double estimate = std::ceil(bound) - 1;
    if (estimate > static_cast<double>(max_series_terms))
    {
        throw Error(ErrorCode::invalid_count,
                    "truncation index exceeds the direct-summation limit");
    }
    auto K = std::max<std::int64_t>(1, static_cast<std::int64_t>(estimate));

    // The estimate can be off by one from rounding in log/exp.
    while (K > 1 && profile_tail(params, K - 1) <= epsilon)
    {
        --K;
    }
    while (profile_tail(params, K) > epsilon)
    {
        ++K;
    }
    return K;
}

TruncatedSum normalization_sum(const ClockParams& params, double epsilon)
{
    TruncatedSum result;
    result.K = truncation_index(params, epsilon);

    CompensatedSum sum;
    for (std::int64_t n = result.K; n >= 1; --n)
    {
        sum += 2 * interval_probability(params, n);
    }
    sum += interval_probability(params, 0);

    result.partial = sum.value();
    result.tail = profile_tail(params, result.K);
    return result;
}

TransitionProfile::TransitionProfile(const ClockParams& params, double epsilon)
    : params_(params)
    , epsilon_(epsilon)
    , K_(stochclock::truncation_index(params, epsilon))
{
}

}  // namespace stochclock
