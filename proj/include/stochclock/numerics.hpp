// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace stochclock
{

/*!
 * Neumaier-compensated running sum.
 *
 * The correction term carries the low-order bits lost by each addition, so
 * summing terms that span many orders of magnitude stays within a few ulp of
 * the exact sum regardless of length.
 */
class CompensatedSum
{
  public:
    CompensatedSum& operator+=(double term) noexcept
    {
        double const t = sum_ + term;
        if (std::fabs(sum_) >= std::fabs(term))
        {
            comp_ += (sum_ - t) + term;
        }
        else
        {
            comp_ += (term - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0;
    double comp_ = 0;
};

//! 1 - exp(-x) without cancellation for small x.
inline double one_minus_exp_neg(double x) noexcept
{
    return -std::expm1(-x);
}

//! Result of a truncated series: explicit terms through index K plus the
//! analytic remainder of every term beyond K.
struct TruncatedSum
{
    double partial = 0;     //!< compensated sum of the explicit terms
    double tail = 0;        //!< analytic remainder beyond K
    std::int64_t K = 0;     //!< last explicit index

    double value() const noexcept { return partial + tail; }
};

//! Largest truncation index any direct summation will attempt.
inline constexpr std::int64_t max_series_terms = std::int64_t{1} << 32;

}  // namespace stochclock
