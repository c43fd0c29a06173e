// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <cstdint>

#include <doctest.h>

#include "stochclock/decay_sim.hpp"
#include "stochclock/error.hpp"

using namespace stochclock;

namespace
{

SimConfig config(std::int64_t M, SimMode mode, std::int64_t replicas = 1,
                 double lambda = 1.0, std::uint64_t seed = 12345)
{
    SimConfig c;
    c.params = make_clock_params(lambda, M);
    c.mode = mode;
    c.replicas = replicas;
    c.seed = seed;
    return c;
}

ErrorCode code_of(auto&& f)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.code();
    }
    FAIL("expected stochclock::Error");
    return ErrorCode::invalid_config;
}

}  // namespace

TEST_CASE("depleting ensemble: sorted, nonnegative, reproducible")
{
    auto const c = config(3, SimMode::depleting_ensemble);
    auto const a = simulate_decay_ensemble(c);
    auto const b = simulate_decay_ensemble(c);
    REQUIRE(a.times.size() == 3);
    CHECK(std::is_sorted(a.times.begin(), a.times.end()));
    CHECK(a.times.front() >= 0);
    CHECK(a.times == b.times);
    CHECK(a.mode == SimMode::depleting_ensemble);
    CHECK(a.seed == 12345);
    CHECK(simulate_decay_ensemble(c, 1).times != a.times);
}

TEST_CASE("chunked k-way merge matches a single sort")
{
    auto c = config(10001, SimMode::depleting_ensemble);
    auto const whole = simulate_decay_ensemble(c, 3);
    for (std::int64_t chunk : {1, 7, 1000, 5000, 10000})
    {
        c.chunk_size = chunk;
        CHECK(simulate_decay_ensemble(c, 3).times == whole.times);
    }
    CHECK(std::adjacent_find(whole.times.begin(), whole.times.end(),
                             [](double x, double y) { return y <= x; })
          == whole.times.end());
}

TEST_CASE("ensemble errors")
{
    auto c = config(101, SimMode::depleting_ensemble);
    c.ensemble_cap = 99;
    CHECK(code_of([&] { simulate_decay_ensemble(c); }) == ErrorCode::cap_exceeded);
    auto s = config(101, SimMode::poisson_stream);
    CHECK(code_of([&] { simulate_decay_ensemble(s); }) == ErrorCode::invalid_config);
    s.replicas = 0;
    CHECK(code_of([&] { simulate_poisson_stream(s, 5); }) == ErrorCode::invalid_config);
}

TEST_CASE("first decay of an ensemble is Exp(M lambda)")
{
    auto const c = config(10001, SimMode::depleting_ensemble, 600);
    auto const g = ensemble_gap_statistics(c, 0);
    CHECK(g.theory_mean == doctest::Approx(c.params.tau).epsilon(1e-15));
    CHECK(std::fabs(g.mean - c.params.tau) <= 5 * g.mean_std_error);
    // exponential: std equals mean
    CHECK(g.std == doctest::Approx(c.params.tau).epsilon(0.15));
}

TEST_CASE("ensemble gaps follow exponential order statistics")
{
    auto const c = config(2001, SimMode::depleting_ensemble, 3000);
    double prev = 0;
    for (std::int64_t k : {0, 250, 500, 1000})
    {
        auto const g = ensemble_gap_statistics(c, k);
        CHECK(g.theory_mean == c.params.tau0 / static_cast<double>(2001 - k));
        CHECK(std::fabs(g.mean - g.theory_mean) <= 5 * g.mean_std_error);
        CHECK(g.theory_mean > prev);
        prev = g.theory_mean;
    }
    CHECK(code_of([&] { ensemble_gap_statistics(c, 2001); })
          == ErrorCode::index_out_of_range);
}

TEST_CASE("poisson stream gaps")
{
    // rate M lambda = 1e4
    auto const c = config(10001, SimMode::poisson_stream, 1, 1e4 / 10001);
    auto const trace = simulate_poisson_stream(c, 1'000'000);
    CHECK(trace.times.size() == 1'000'000);
    CHECK(std::is_sorted(trace.times.begin(), trace.times.end()));
    auto const g = gap_statistics(trace);
    CHECK(g.count == 999'999);
    CHECK(std::fabs(g.mean / 1e-4 - 1) <= 0.005);
    CHECK(std::fabs(g.mean - 1e-4) <= 5 * g.mean_std_error);
    CHECK(g.std == doctest::Approx(1e-4).epsilon(0.01));

    auto limited = c;
    limited.event_budget = 10;
    CHECK(code_of([&] { simulate_poisson_stream(limited, 11); })
          == ErrorCode::budget_exceeded);
}

TEST_CASE("gap statistics on fixed input")
{
    EventTrace t;
    t.times = {0.1, 0.3, 0.6};
    auto const g = gap_statistics(t);
    CHECK(g.mean == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.std == doctest::Approx(std::sqrt(0.005)).epsilon(1e-12));
    CHECK(g.count == 2);

    EventTrace one;
    one.times = {0.5};
    CHECK(code_of([&] { gap_statistics(one); }) == ErrorCode::too_few_events);
}

TEST_CASE("occupancy of constructed traces")
{
    auto const p = make_clock_params(1.0, std::int64_t{11});  // N = 5
    EventTrace t;
    for (int n = 1; n <= 5; ++n)
    {
        t.times.push_back(n * p.tau);
    }
    auto const h = interval_occupancy(t, p, 5);
    CHECK(h.total_intervals == 5);
    REQUIRE(h.counts.size() == 2);
    CHECK(h.counts[0] == 0);
    CHECK(h.counts[1] == 5);

    // boundary values belong to the upper interval
    EventTrace edges;
    edges.times = {interval_bounds(p, 1).lo, interval_bounds(p, 2).lo,
                   interval_bounds(p, 2).lo, 5 * p.tau};
    auto const e = interval_occupancy(edges, p, 5);
    CHECK(e.counts[0] == 2);  // J^3, J^4
    CHECK(e.counts[1] == 2);  // J^1, J^5
    CHECK(e.counts[2] == 1);  // J^2

    CHECK(code_of([&] { interval_occupancy(t, p, 6); })
          == ErrorCode::index_out_of_range);
    EventTrace short_trace;
    short_trace.times = {p.tau};
    CHECK(code_of([&] { interval_occupancy(short_trace, p, 3); })
          == ErrorCode::range_exceeds_trace);
}

TEST_CASE("unit-mean stream occupancy matches Poisson(1)")
{
    auto const c = config(400001, SimMode::poisson_stream);
    auto const trace = simulate_poisson_stream(c, 205'000);
    auto const h = interval_occupancy(trace, c.params, 200'000);
    double const inv_e = std::exp(-1.0);
    double const pmf[] = {inv_e, inv_e, inv_e / 2, inv_e / 6};
    for (std::size_t j = 0; j < 4; ++j)
    {
        CHECK(std::fabs(h.fraction(j) - pmf[j]) <= 0.01);
    }
    std::int64_t total = 0;
    for (auto n : h.counts)
    {
        total += n;
    }
    CHECK(total == h.total_intervals);
}

TEST_CASE("n-th event spread")
{
    auto c = config(101, SimMode::poisson_stream, 4000);
    auto const one = nth_event_time_spread(c, 1);
    CHECK(one.theory_std == c.params.tau);
    CHECK(one.std == doctest::Approx(c.params.tau).epsilon(0.05));

    auto const at_m = nth_event_time_spread(c, 101);
    auto const at_4m = nth_event_time_spread(c, 404);
    CHECK(at_4m.std / at_m.std == doctest::Approx(2.0).epsilon(0.06));
    CHECK(std::fabs(at_m.mean - at_m.theory_mean) <= 5 * at_m.mean_std_error);
    CHECK(at_m.theory_std == doctest::Approx(c.params.tau0 / std::sqrt(101.0)).epsilon(1e-15));

    // same draws as the explicit traces
    auto small = c;
    small.replicas = 100;
    double sum = 0;
    for (std::int64_t r = 0; r < 100; ++r)
    {
        sum += simulate_poisson_stream(small, 101, r).times.back();
    }
    CHECK(nth_event_time_spread(small, 101).mean == sum / 100);

    c.replicas = 99;
    CHECK(code_of([&] { nth_event_time_spread(c, 10); }) == ErrorCode::too_few_replicas);
    c.replicas = 100;
    c.event_budget = 50;
    CHECK(code_of([&] { nth_event_time_spread(c, 51); }) == ErrorCode::budget_exceeded);
}

TEST_CASE("results do not depend on the worker count")
{
    auto c = config(501, SimMode::poisson_stream, 200);
    c.threads = 1;
    auto const serial = nth_event_time_spread(c, 501);
    c.threads = 8;
    auto const parallel = nth_event_time_spread(c, 501);
    CHECK(serial.mean == parallel.mean);
    CHECK(serial.std == parallel.std);

    auto e = config(301, SimMode::depleting_ensemble, 16);
    e.threads = 1;
    auto const a = ensemble_gap_statistics(e, 150);
    e.threads = 5;
    auto const b = ensemble_gap_statistics(e, 150);
    CHECK(a.mean == b.mean);
    CHECK(a.std == b.std);

    auto s = config(101, SimMode::poisson_stream, 2);
    CHECK(simulate_poisson_stream(s, 50, 1).times
          == simulate_poisson_stream(s, 50, 1).times);
}
