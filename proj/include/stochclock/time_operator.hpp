// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "stochclock/clock_model.hpp"
#include "stochclock/numerics.hpp"
#include "stochclock/transition_profile.hpp"

namespace stochclock
{

//! Above this process count callers default to the asymptotic variance.
inline constexpr std::int64_t exact_series_max_count = 1'000'000;

enum class Summation
{
    paired,  //!< (tau^n + tau^-n) p(n) per pair; cancels exactly
    naive,   //!< left to right over n = -N .. N
};

//! <T> at t = 0: sum over the grid of n tau p(n).
double expected_time_at_origin(const ClockParams& params,
                               Summation mode = Summation::paired);

struct Expectation
{
    double exact;     //!< tau^k: antisymmetric sum (zero) + tau^k
    double finite_m;  //!< tau^k * normalization_value, the literal finite-M sum
};

//! Diagonal element C^kk for -N <= k <= N.
Expectation expected_time(const ClockParams& params, std::int64_t k);

//! Coarse |C^0k|^2 summand (tau0^2 / 4M^4) k^2 exp(-|k|/M).
double variance_term(const ClockParams& params, std::int64_t k);

//! Direct summation of variance_term over all k. The K explicit terms on each
//! side are accumulated from large |k| to small; the remainder beyond K is
//! added analytically and is at most epsilon of the total.
TruncatedSum variance_sum(const ClockParams& params,
                          double epsilon = default_epsilon);

double variance_series(const ClockParams& params,
                       double epsilon = default_epsilon);

//! M variance_series / tau0^2, below one by about 1/(240 M^4). Summed in
//! extended precision, so it never rounds above one.
double variance_ratio(const ClockParams& params,
                      double epsilon = default_epsilon);

//! 2 q (1 + q) / (1 - q)^3 scaled by tau0^2 / 4M^4, q = exp(-1/M).
double variance_closed_form(const ClockParams& params);

//! The printed bracket [e^(1/M) + e^(2/M)] [e^(1/M) - 1]^-3, without the
//! factor 2 of the geometric-series derivative. Exactly half of
//! variance_closed_form.
double variance_closed_form_printed(const ClockParams& params);

//! Large-M limit tau0^2 / M.
double variance_asymptotic(const ClockParams& params);

//! variance_series for M <= exact_series_max_count, otherwise the asymptote.
double preferred_variance(const ClockParams& params,
                          double epsilon = default_epsilon);

struct StdDevResult
{
    double sigma_exact;       //!< sqrt(variance_series) as sigma_asymptotic sqrt(variance_ratio)
    double sigma_asymptotic;  //!< tau0 / sqrt(M)
    double sigma_grid_form;   //!< tau sqrt(M), same quantity from the grid step
};

//! Throws Error{invalid_config} if the two asymptotic forms drift apart by
//! more than 1e-15 relative (cannot happen for valid params).
StdDevResult std_dev(const ClockParams& params,
                     double epsilon = default_epsilon);

struct VarianceReport
{
    ClockParams params;
    double epsilon = default_epsilon;
    //! Series fields are empty when M > exact_series_max_count.
    std::optional<std::int64_t> truncation_index;
    std::optional<double> tail;          //!< analytic remainder in series
    std::optional<double> series_value;  //!< [s^2]
    double closed_form = 0;              //!< [s^2]
    double closed_form_printed = 0;      //!< [s^2]
    double asymptotic = 0;               //!< [s^2]
    double sigma = 0;  //!< [s], as StdDevResult::sigma_exact, else sqrt(asymptotic)
    double sigma_asymptotic = 0;                   //!< [s]
    std::optional<double> rel_dev_series_vs_closed;  //!< |series - closed| / closed
    std::optional<double> rel_dev_vs_asymptotic;  //!< series / asymptotic - 1
};

VarianceReport variance_report(const ClockParams& params,
                               double epsilon = default_epsilon);

}  // namespace stochclock
