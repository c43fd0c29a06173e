// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace stochclock
{

//! Largest process count accepted by ClockParams.
inline constexpr std::int64_t max_process_count = 1'000'000'000'000'000;

/*!
 * Defining constants of a stochastic clock built from M identical decay
 * processes of rate lambda.
 *
 * The grid spacing tau = tau0 / M is the mean distance between neighbouring
 * decays; M = 2N + 1 grid intervals are centred on n * tau, -N <= n <= N.
 * Construct through make_clock_params, which enforces the invariants.
 */
struct ClockParams
{
    double lambda = 1.0;    //!< decay rate [1/s]
    double tau0 = 1.0;      //!< characteristic time 1/lambda [s]
    std::int64_t M = 3;     //!< number of elementary processes, odd, >= 3
    std::int64_t N = 1;     //!< half-width index count, (M - 1) / 2
    double tau = 1.0 / 3;   //!< grid spacing tau0 / M [s]

    //! Process count as the binary64 value every formula receives.
    double count() const noexcept { return static_cast<double>(M); }

    friend bool operator==(const ClockParams&, const ClockParams&) = default;
};

//! Validate and build a parameter set.
//! Throws Error{invalid_rate} or Error{invalid_count}; the count message
//! names the nearest odd values.
ClockParams make_clock_params(double lambda, std::int64_t M);

//! Overload for counts read as floating point (e.g. "1e5" on a command
//! line); non-integral values are rejected as invalid_count.
ClockParams make_clock_params(double lambda, double M);

//! Time point n * tau, for -N <= n <= N.
double grid_point(const ClockParams& params, std::int64_t n);

struct IntervalBounds
{
    double lo;
    double hi;
};

//! Interval J^n = [n tau - tau/2, n tau + tau/2], for -N <= n <= N.
//! Adjacent intervals share their boundary value exactly.
IntervalBounds interval_bounds(const ClockParams& params, std::int64_t n);

}  // namespace stochclock
