// SPDX-License-Identifier: Apache-2.0
#include "stochclock/decay_sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <utility>

#include "parallel.hpp"
#include "stochclock/error.hpp"
#include "stochclock/philox.hpp"

namespace stochclock
{
namespace
{

void require_mode(const SimConfig& config, SimMode mode)
{
    if (config.mode != mode)
    {
        throw Error(ErrorCode::invalid_config,
                    "operation requires mode " + std::string(to_string(mode)));
    }
}

double stream_rate(const ClockParams& params)
{
    return params.count() * params.lambda;
}

// Merge individually sorted runs [bounds[i], bounds[i+1]) of `data`.
std::vector<double> merge_runs(const std::vector<double>& data,
                               const std::vector<std::size_t>& bounds)
{
    using Head = std::pair<double, std::size_t>;  // value, run index
    std::priority_queue<Head, std::vector<Head>, std::greater<>> heap;
    std::vector<std::size_t> pos(bounds.begin(), bounds.end() - 1);
    for (std::size_t r = 0; r + 1 < bounds.size(); ++r)
    {
        if (pos[r] < bounds[r + 1])
        {
            heap.emplace(data[pos[r]], r);
        }
    }

    std::vector<double> out;
    out.reserve(data.size());
    while (!heap.empty())
    {
        auto const [value, r] = heap.top();
        heap.pop();
        out.push_back(value);
        if (++pos[r] < bounds[r + 1])
        {
            heap.emplace(data[pos[r]], r);
        }
    }
    return out;
}

struct MeanStd
{
    double mean;
    double std;
};

// Two-pass moments in index order.
MeanStd moments(const std::vector<double>& x)
{
    double sum = 0;
    for (double v : x)
    {
        sum += v;
    }
    double const mean = sum / static_cast<double>(x.size());
    double ss = 0;
    for (double v : x)
    {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / static_cast<double>(x.size() - 1))};
}

}  // namespace

std::string_view to_string(SimMode mode) noexcept
{
    return mode == SimMode::depleting_ensemble ? "depleting-ensemble"
                                               : "poisson-stream";
}

void validate(const SimConfig& config)
{
    if (config.replicas < 1)
    {
        throw Error(ErrorCode::invalid_config, "replicas must be >= 1");
    }
    if (config.event_budget < 1)
    {
        throw Error(ErrorCode::invalid_config, "event budget must be >= 1");
    }
    if (config.chunk_size < 1 || config.ensemble_cap < 1)
    {
        throw Error(ErrorCode::invalid_config,
                    "chunk size and ensemble cap must be >= 1");
    }
}

EventTrace simulate_decay_ensemble(const SimConfig& config,
                                   std::int64_t replica)
{
    validate(config);
    require_mode(config, SimMode::depleting_ensemble);
    if (config.params.M > config.ensemble_cap)
    {
        throw Error(ErrorCode::cap_exceeded,
                    "ensemble of " + std::to_string(config.params.M)
                        + " lifetimes exceeds cap "
                        + std::to_string(config.ensemble_cap)
                        + "; use poisson-stream mode for large M");
    }

    auto const M = static_cast<std::size_t>(config.params.M);
    auto const chunk = static_cast<std::size_t>(config.chunk_size);
    ReplicaStream rng(config.seed, static_cast<std::uint64_t>(replica),
                      StreamTag::ensemble_lifetimes);

    EventTrace trace;
    trace.mode = SimMode::depleting_ensemble;
    trace.seed = config.seed;
    trace.replica = replica;
    trace.times.resize(M);
    for (double& t : trace.times)
    {
        t = rng.next_exponential(config.params.lambda);
    }

    if (M <= chunk)
    {
        std::sort(trace.times.begin(), trace.times.end());
        return trace;
    }

    std::vector<std::size_t> bounds;
    for (std::size_t b = 0; b < M; b += chunk)
    {
        bounds.push_back(b);
    }
    bounds.push_back(M);
    for (std::size_t r = 0; r + 1 < bounds.size(); ++r)
    {
        std::sort(trace.times.begin() + static_cast<std::ptrdiff_t>(bounds[r]),
                  trace.times.begin()
                      + static_cast<std::ptrdiff_t>(bounds[r + 1]));
    }
    trace.times = merge_runs(trace.times, bounds);
    return trace;
}

EventTrace simulate_poisson_stream(const SimConfig& config, std::int64_t count,
                                   std::int64_t replica)
{
    validate(config);
    require_mode(config, SimMode::poisson_stream);
    if (count < 1 || count > config.event_budget)
    {
        throw Error(ErrorCode::budget_exceeded,
                    "event count " + std::to_string(count)
                        + " outside [1, event budget "
                        + std::to_string(config.event_budget) + "]");
    }

    double const rate = stream_rate(config.params);
    ReplicaStream rng(config.seed, static_cast<std::uint64_t>(replica),
                      StreamTag::poisson_gaps);

    EventTrace trace;
    trace.mode = SimMode::poisson_stream;
    trace.seed = config.seed;
    trace.replica = replica;
    trace.times.resize(static_cast<std::size_t>(count));
    double t = 0;
    for (double& slot : trace.times)
    {
        t += rng.next_exponential(rate);
        slot = t;
    }
    return trace;
}

GapStats gap_statistics(const EventTrace& trace)
{
    if (trace.times.size() < 2)
    {
        throw Error(ErrorCode::too_few_events,
                    "gap statistics need at least 2 events");
    }
    std::vector<double> gaps(trace.times.size() - 1);
    for (std::size_t i = 0; i + 1 < trace.times.size(); ++i)
    {
        gaps[i] = trace.times[i + 1] - trace.times[i];
    }

    GapStats s;
    s.count = static_cast<std::int64_t>(gaps.size());
    if (gaps.size() == 1)
    {
        s.mean = gaps[0];
        return s;
    }
    auto const [mean, std] = moments(gaps);
    s.mean = mean;
    s.std = std;
    s.mean_std_error = std / std::sqrt(static_cast<double>(s.count));
    return s;
}

OccupancyHistogram interval_occupancy(const EventTrace& trace,
                                      const ClockParams& params,
                                      std::int64_t n_max)
{
    if (n_max < 1 || n_max > params.N)
    {
        throw Error(ErrorCode::index_out_of_range,
                    "occupancy range n_max must lie in [1, N = "
                        + std::to_string(params.N) + "]");
    }
    if (trace.times.empty()
        || static_cast<double>(n_max) * params.tau > trace.times.back())
    {
        throw Error(ErrorCode::range_exceeds_trace,
                    "n_max * tau lies beyond the last event of the trace");
    }

    std::vector<std::int64_t> per_interval(static_cast<std::size_t>(n_max), 0);
    double const first_lo = interval_bounds(params, 1).lo;
    double const last_hi = interval_bounds(params, n_max).hi;
    for (double t : trace.times)
    {
        if (t < first_lo)
        {
            continue;
        }
        if (t >= last_hi)
        {
            break;
        }
        auto n = static_cast<std::int64_t>(std::floor(t / params.tau + 0.5));
        n = std::clamp<std::int64_t>(n, 1, n_max);
        // Settle rounding at the boundaries against the exact bounds.
        while (n > 1 && t < interval_bounds(params, n).lo)
        {
            --n;
        }
        while (n < n_max && t >= interval_bounds(params, n).hi)
        {
            ++n;
        }
        ++per_interval[static_cast<std::size_t>(n - 1)];
    }

    OccupancyHistogram h;
    h.total_intervals = n_max;
    for (std::int64_t c : per_interval)
    {
        if (static_cast<std::size_t>(c) >= h.counts.size())
        {
            h.counts.resize(static_cast<std::size_t>(c) + 1, 0);
        }
        ++h.counts[static_cast<std::size_t>(c)];
    }
    return h;
}

SpreadResult nth_event_time_spread(const SimConfig& config, std::int64_t n)
{
    validate(config);
    require_mode(config, SimMode::poisson_stream);
    if (n < 1 || n > config.event_budget)
    {
        throw Error(ErrorCode::budget_exceeded,
                    "event index " + std::to_string(n)
                        + " outside [1, event budget]");
    }
    if (config.replicas < 100)
    {
        throw Error(ErrorCode::too_few_replicas,
                    "spread estimate needs at least 100 replicas");
    }

    double const rate = stream_rate(config.params);
    std::vector<double> nth(static_cast<std::size_t>(config.replicas));
    detail::parallel_for(config.replicas, config.threads, [&](std::int64_t r) {
        // Same draws and accumulation order as simulate_poisson_stream.
        ReplicaStream rng(config.seed, static_cast<std::uint64_t>(r),
                          StreamTag::poisson_gaps);
        double t = 0;
        for (std::int64_t i = 0; i < n; ++i)
        {
            t += rng.next_exponential(rate);
        }
        nth[static_cast<std::size_t>(r)] = t;
    });

    auto const [mean, std] = moments(nth);
    double const R = static_cast<double>(config.replicas);
    SpreadResult s;
    s.n = n;
    s.replicas = config.replicas;
    s.mean = mean;
    s.std = std;
    s.mean_std_error = std / std::sqrt(R);
    s.std_error = std / std::sqrt(2 * (R - 1));
    s.theory_mean = static_cast<double>(n) * config.params.tau;
    s.theory_std = config.params.tau * std::sqrt(static_cast<double>(n));
    return s;
}

OrderedGapResult ensemble_gap_statistics(const SimConfig& config,
                                         std::int64_t k)
{
    validate(config);
    require_mode(config, SimMode::depleting_ensemble);
    if (k < 0 || k >= config.params.M)
    {
        throw Error(ErrorCode::index_out_of_range,
                    "gap index k must lie in [0, M)");
    }
    if (config.replicas < 2)
    {
        throw Error(ErrorCode::too_few_replicas,
                    "gap statistics across replicas need at least 2");
    }

    std::vector<double> gaps(static_cast<std::size_t>(config.replicas));
    detail::parallel_for(config.replicas, config.threads, [&](std::int64_t r) {
        auto const trace = simulate_decay_ensemble(config, r);
        auto const i = static_cast<std::size_t>(k);
        gaps[static_cast<std::size_t>(r)]
            = trace.times[i] - (i == 0 ? 0.0 : trace.times[i - 1]);
    });

    auto const [mean, std] = moments(gaps);
    OrderedGapResult g;
    g.k = k;
    g.replicas = config.replicas;
    g.mean = mean;
    g.std = std;
    g.mean_std_error = std / std::sqrt(static_cast<double>(config.replicas));
    g.theory_mean
        = config.params.tau0 / static_cast<double>(config.params.M - k);
    return g;
}

}  // namespace stochclock
