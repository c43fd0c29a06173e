// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "stochclock/clock_model.hpp"

namespace stochclock
{

enum class SimMode
{
    depleting_ensemble,  //!< M one-shot lifetimes; rate falls as they decay
    poisson_stream,      //!< constant total rate M lambda
};

std::string_view to_string(SimMode mode) noexcept;

inline constexpr std::int64_t default_ensemble_cap = 100'000'000;
inline constexpr std::int64_t default_event_budget = 100'000'000;

struct SimConfig
{
    ClockParams params;
    SimMode mode = SimMode::poisson_stream;
    std::int64_t replicas = 1;
    std::uint64_t seed = 0;
    std::int64_t event_budget = default_event_budget;
    std::int64_t ensemble_cap = default_ensemble_cap;
    //! Worker threads for replica loops; 0 selects hardware concurrency.
    //! Results never depend on this value.
    unsigned threads = 0;
    //! Lifetimes sorted per chunk before the k-way merge.
    std::int64_t chunk_size = std::int64_t{1} << 22;
};

//! Throws Error{invalid_config} for replicas/event_budget/chunk_size < 1.
void validate(const SimConfig& config);

struct EventTrace
{
    std::vector<double> times;  //!< ascending, all >= 0 [s]
    SimMode mode = SimMode::poisson_stream;
    std::uint64_t seed = 0;
    std::int64_t replica = 0;
};

//! M independent Exp(lambda) lifetimes of one replica, sorted ascending.
//! Throws Error{cap_exceeded} when M > ensemble_cap.
EventTrace simulate_decay_ensemble(const SimConfig& config,
                                   std::int64_t replica = 0);

//! First `count` events of a rate M lambda Poisson stream: cumulative sums of
//! Exp(M lambda) gaps. Throws Error{budget_exceeded} when count >
//! event_budget.
EventTrace simulate_poisson_stream(const SimConfig& config, std::int64_t count,
                                   std::int64_t replica = 0);

struct GapStats
{
    double mean = 0;            //!< [s]
    double std = 0;             //!< sample std, n - 1 denominator [s]
    std::int64_t count = 0;     //!< number of gaps
    double mean_std_error = 0;  //!< std / sqrt(count) [s]
};

//! Statistics of consecutive differences. Throws Error{too_few_events}.
GapStats gap_statistics(const EventTrace& trace);

struct OccupancyHistogram
{
    std::vector<std::int64_t> counts;  //!< counts[j]: intervals with j events
    std::int64_t total_intervals = 0;

    double fraction(std::size_t j) const noexcept
    {
        return j < counts.size() ? static_cast<double>(counts[j])
                                       / static_cast<double>(total_intervals)
                                 : 0.0;
    }
};

//! Bin events into J^1 .. J^n_max using the half-open convention
//! lo <= t < hi of interval_bounds. Throws Error{index_out_of_range} for
//! n_max outside [1, N] and Error{range_exceeds_trace} if n_max tau is beyond
//! the last event.
OccupancyHistogram interval_occupancy(const EventTrace& trace,
                                      const ClockParams& params,
                                      std::int64_t n_max);

struct SpreadResult
{
    std::int64_t n = 0;
    std::int64_t replicas = 0;
    double mean = 0;            //!< [s]
    double std = 0;             //!< [s]
    double mean_std_error = 0;  //!< std / sqrt(R)
    double std_error = 0;       //!< std / sqrt(2 (R - 1)), normal approximation
    double theory_mean = 0;     //!< n tau
    double theory_std = 0;      //!< tau sqrt(n)
};

//! Spread of the n-th event time of a Poisson stream across replicas.
SpreadResult nth_event_time_spread(const SimConfig& config, std::int64_t n);

struct OrderedGapResult
{
    std::int64_t k = 0;
    std::int64_t replicas = 0;
    double mean = 0;            //!< [s]
    double std = 0;             //!< [s]
    double mean_std_error = 0;  //!< [s]
    double theory_mean = 0;     //!< tau0 / (M - k) [s]
};

/*!
 * Gap between the k-th and (k+1)-th decay of a depleting ensemble across
 * replicas (k = 0 is the first decay time itself).
 *
 * Order statistics of exponentials give a mean of tau0 / (M - k): the spacing
 * equals tau only while k << M.
 */
OrderedGapResult ensemble_gap_statistics(const SimConfig& config,
                                         std::int64_t k);

}  // namespace stochclock
