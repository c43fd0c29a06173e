// SPDX-License-Identifier: Apache-2.0
#include "stochclock/clock_model.hpp"

#include <cmath>
#include <string>

#include "stochclock/error.hpp"

namespace stochclock
{
namespace
{

[[noreturn]] void throw_count(std::int64_t M)
{
    std::string msg = "process count M must be odd and >= 3 (M = 2N + 1); got "
                      + std::to_string(M);
    if (M < 3)
    {
        msg += "; nearest valid value is 3";
    }
    else if (M > max_process_count)
    {
        msg += "; maximum supported is " + std::to_string(max_process_count);
    }
    else
    {
        msg += "; nearest valid values are " + std::to_string(M - 1) + " and "
               + std::to_string(M + 1);
    }
    throw Error(ErrorCode::invalid_count, msg);
}

void check_index(const ClockParams& params, std::int64_t n)
{
    if (n < -params.N || n > params.N)
    {
        throw Error(ErrorCode::index_out_of_range,
                    "grid index " + std::to_string(n) + " outside [-"
                        + std::to_string(params.N) + ", "
                        + std::to_string(params.N) + "]");
    }
}

}  // namespace

ClockParams make_clock_params(double lambda, std::int64_t M)
{
    if (!(lambda > 0) || !std::isfinite(lambda))
    {
        throw Error(ErrorCode::invalid_rate,
                    "decay rate lambda must be positive and finite");
    }
    if (M < 3 || M % 2 == 0 || M > max_process_count)
    {
        throw_count(M);
    }

    ClockParams p;
    p.lambda = lambda;
    p.tau0 = 1.0 / lambda;
    p.M = M;
    p.N = (M - 1) / 2;
    p.tau = p.tau0 / static_cast<double>(M);
    return p;
}

ClockParams make_clock_params(double lambda, double M)
{
    if (!std::isfinite(M) || M != std::floor(M))
    {
        throw Error(ErrorCode::invalid_count,
                    "process count M must be an odd integer >= 3");
    }
    if (M > static_cast<double>(max_process_count))
    {
        throw Error(ErrorCode::invalid_count,
                    "process count M exceeds the supported maximum "
                        + std::to_string(max_process_count));
    }
    if (M < 3)
    {
        throw_count(static_cast<std::int64_t>(M));
    }
    return make_clock_params(lambda, static_cast<std::int64_t>(M));
}

double grid_point(const ClockParams& params, std::int64_t n)
{
    check_index(params, n);
    return static_cast<double>(n) * params.tau;
}

IntervalBounds interval_bounds(const ClockParams& params, std::int64_t n)
{
    check_index(params, n);
    // Boundaries are the half-integer points (2n -+ 1) tau/2, so the upper
    // bound of J^n and the lower bound of J^(n+1) are the same expression.
    double const half = params.tau / 2;
    return {static_cast<double>(2 * n - 1) * half,
            static_cast<double>(2 * n + 1) * half};
}

}  // namespace stochclock
