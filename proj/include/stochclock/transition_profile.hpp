// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "stochclock/clock_model.hpp"
#include "stochclock/numerics.hpp"

namespace stochclock
{

//! Default relative tail bound for truncated sums.
inline constexpr double default_epsilon = 1e-12;

//! Elementary decay density lambda exp(-lambda (t - t0)) for t >= t0.
double decay_density(const ClockParams& params, double t, double t0);

//! One-sided probability of the first decay landing in J^n, n >= 1:
//! (1/M) exp(-n/M).
double interval_probability_raw(const ClockParams& params, std::int64_t n);

//! Symmetrized, halved profile p(n) = (1/2M) exp(-|n|/M), any integer n.
double interval_probability(const ClockParams& params, std::int64_t n);

//! Exact value of sum_{n in Z} p(n), i.e. x coth(x) with x = 1/(2M).
//! Exceeds 1 by about 1/(12 M^2).
double normalization_value(const ClockParams& params);

//! Mass of the profile outside |n| <= K: 2 sum_{n > K} p(n).
double profile_tail(const ClockParams& params, std::int64_t K);

//! Smallest K >= 1 with profile_tail(K) <= epsilon, 0 < epsilon < 1.
std::int64_t truncation_index(const ClockParams& params, double epsilon);

//! sum_{|n| <= K} p(n) by compensated summation (small to large terms)
//! plus profile_tail(K), with K = truncation_index(epsilon).
TruncatedSum normalization_sum(const ClockParams& params,
                               double epsilon = default_epsilon);

/*!
 * Truncated interval-probability table.
 *
 * Probabilities are evaluated on demand; indices beyond the truncation index
 * are still defined, their total mass is reported by tail_mass().
 */
class TransitionProfile
{
  public:
    explicit TransitionProfile(const ClockParams& params,
                               double epsilon = default_epsilon);

    const ClockParams& params() const noexcept { return params_; }
    double epsilon() const noexcept { return epsilon_; }
    std::int64_t truncation_index() const noexcept { return K_; }
    double tail_mass() const { return profile_tail(params_, K_); }

    double operator()(std::int64_t n) const
    {
        return interval_probability(params_, n);
    }

  private:
    ClockParams params_;
    double epsilon_;
    std::int64_t K_;
};

}  // namespace stochclock
