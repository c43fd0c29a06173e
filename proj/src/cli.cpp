// SPDX-License-Identifier: Apache-2.0
#include "stochclock/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "stochclock/clock_model.hpp"
#include "stochclock/decay_sim.hpp"
#include "stochclock/dilation_limits.hpp"
#include "stochclock/error.hpp"
#include "stochclock/serialize.hpp"
#include "stochclock/time_operator.hpp"
#include "stochclock/transition_profile.hpp"

namespace stochclock::cli
{
namespace
{

constexpr std::int64_t default_table_rows = 500;

//! Invalid user input, attributed to the flag that carried it.
class FlagError : public std::runtime_error
{
  public:
    FlagError(std::string flag, ErrorCode code, const std::string& message)
        : std::runtime_error(message), flag_(std::move(flag)), code_(code)
    {
    }

    const std::string& flag() const noexcept { return flag_; }
    ErrorCode code() const noexcept { return code_; }

  private:
    std::string flag_;
    ErrorCode code_;
};

struct Options
{
    double lambda = 1.0;
    std::string count = "1001";
    std::uint64_t seed = 0;
    std::int64_t replicas = 1;
    double epsilon = default_epsilon;
    std::string format = "json";
    std::string out;
    bool strict = false;
    bool plot_data = false;
    unsigned threads = 0;

    std::optional<std::int64_t> max_index;
    std::vector<std::int64_t> ks;

    std::string mode = "stream";
    std::optional<std::int64_t> events;
    std::optional<std::int64_t> nth;
    std::optional<std::int64_t> gap_index;
    std::optional<std::int64_t> occupancy_intervals;

    std::optional<double> sigma;
    std::optional<double> beta;
    bool schwarzschild = false;
    std::optional<double> r_s;
    std::optional<double> r;

    double safety = default_safety_factor;
    std::optional<double> cap;
    double planck = planck_time;
};

struct Output
{
    Json doc;
    std::string csv;
    std::string plot;
    bool physics_violation = false;
};

//! Re-raise a library error as a FlagError naming `flag`.
template<class F>
auto attribute(const std::string& flag, F&& f) -> decltype(f())
{
    try
    {
        return f();
    }
    catch (const Error& e)
    {
        throw FlagError(flag, e.code(), flag + ": " + e.what());
    }
}

double parse_count_value(const std::string& text)
{
    char* end = nullptr;
    double const v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
    {
        throw FlagError("--count", ErrorCode::invalid_count,
                        "--count: '" + text + "' is not a number");
    }
    return v;
}

ClockParams resolve_params(const Options& o)
{
    double const M = parse_count_value(o.count);
    attribute("--lambda", [&] { return make_clock_params(o.lambda, 3.0); });
    return attribute("--count", [&] { return make_clock_params(o.lambda, M); });
}

void check_epsilon(const Options& o)
{
    if (!(o.epsilon > 0 && o.epsilon < 1))
    {
        throw FlagError("--epsilon", ErrorCode::invalid_epsilon,
                        "--epsilon: tail bound must lie in (0, 1)");
    }
}

std::int64_t table_half_width(const Options& o, const ClockParams& p)
{
    std::int64_t const n = o.max_index.value_or(
        std::min(p.N, default_table_rows));
    if (n < 0 || n > p.N)
    {
        throw FlagError("--max-index", ErrorCode::index_out_of_range,
                        "--max-index: must lie in [0, N = "
                            + std::to_string(p.N) + "]");
    }
    return n;
}

std::string csv_row(std::initializer_list<std::string> cells)
{
    std::string row;
    bool first = true;
    for (auto const& c : cells)
    {
        if (!first)
        {
            row += ',';
        }
        first = false;
        row += c;
    }
    row += '\n';
    return row;
}

std::string fmt(double v) { return format_double(v); }

//---------------------------------------------------------------------------//

Output run_profile(const Options& o)
{
    ClockParams const p = resolve_params(o);
    check_epsilon(o);
    std::int64_t const half = table_half_width(o, p);

    TruncatedSum const direct = normalization_sum(p, o.epsilon);
    double const exact = normalization_value(p);

    Output res;
    res.doc["command"] = "profile";
    res.doc["params"] = to_json(p);
    res.doc["epsilon"] = o.epsilon;
    res.doc["normalization"] = Json{
        {"exact", exact},
        {"deviation_from_one", exact - 1},
        {"direct_sum", direct.value()},
        {"direct_partial", direct.partial},
        {"tail", direct.tail},
        {"truncation_index", direct.K},
        {"rel_diff_direct_vs_exact", std::fabs(direct.value() - exact) / exact}};

    Json rows = Json::array();
    res.csv = csv_row({"n", "probability"});
    for (std::int64_t n = -half; n <= half; ++n)
    {
        double const prob = interval_probability(p, n);
        Json row{{"n", n}, {"probability", prob}};
        row["one_sided"] = n >= 1 ? Json(interval_probability_raw(p, n))
                                  : Json(nullptr);
        rows.push_back(std::move(row));
        res.csv += csv_row({std::to_string(n), fmt(prob)});
        res.plot += std::to_string(n) + ' ' + fmt(prob) + '\n';
    }
    res.doc["rows"] = std::move(rows);
    return res;
}

Output run_operator(const Options& o)
{
    ClockParams const p = resolve_params(o);
    check_epsilon(o);
    std::int64_t const half = table_half_width(o, p);

    std::vector<std::int64_t> ks = o.ks;
    if (ks.empty())
    {
        std::set<std::int64_t> picks{-p.N, -1, 0, 1, p.N};
        ks.assign(picks.begin(), picks.end());
    }
    for (std::int64_t k : ks)
    {
        if (k < -p.N || k > p.N)
        {
            throw FlagError("--k", ErrorCode::index_out_of_range,
                            "--k: index " + std::to_string(k)
                                + " outside [-N, N]");
        }
    }

    VarianceReport const report = variance_report(p, o.epsilon);

    Output res;
    res.doc["command"] = "operator";
    res.doc["variance"] = to_json(report);
    res.doc["std_dev"] = Json{
        {"sigma_exact", report.series_value ? Json(report.sigma) : Json(nullptr)},
        {"sigma_asymptotic", report.sigma_asymptotic},
        {"sigma_grid_form", p.tau * std::sqrt(p.count())}};

    Json origin;
    if (p.M <= exact_series_max_count)
    {
        origin["paired"] = expected_time_at_origin(p, Summation::paired);
        origin["naive"] = expected_time_at_origin(p, Summation::naive);
    }
    else
    {
        origin["paired"] = nullptr;
        origin["naive"] = nullptr;
    }
    res.doc["expected_time_at_origin"] = std::move(origin);

    Json expectations = Json::array();
    for (std::int64_t k : ks)
    {
        Expectation const e = expected_time(p, k);
        expectations.push_back(
            Json{{"k", k}, {"exact", e.exact}, {"finite_m", e.finite_m}});
    }
    res.doc["expectations"] = std::move(expectations);

    res.csv = csv_row({"k", "variance_term"});
    for (std::int64_t k = -half; k <= half; ++k)
    {
        double const term = variance_term(p, k);
        res.csv += csv_row({std::to_string(k), fmt(term)});
        res.plot += std::to_string(k) + ' ' + fmt(term) + '\n';
    }
    return res;
}

Output run_simulate(const Options& o)
{
    ClockParams const p = resolve_params(o);

    SimConfig cfg;
    cfg.params = p;
    cfg.seed = o.seed;
    cfg.replicas = o.replicas;
    cfg.threads = o.threads;
    if (o.mode == "stream")
    {
        cfg.mode = SimMode::poisson_stream;
    }
    else
    {
        cfg.mode = SimMode::depleting_ensemble;
    }
    if (o.replicas < 1)
    {
        throw FlagError("--replicas", ErrorCode::invalid_config,
                        "--replicas: must be >= 1");
    }
    if (cfg.mode == SimMode::depleting_ensemble)
    {
        if (o.events || o.nth || o.occupancy_intervals)
        {
            throw FlagError("--mode", ErrorCode::invalid_config,
                            "--mode ensemble: --events, --nth and "
                            "--occupancy-intervals apply to stream mode only");
        }
        if (p.M > cfg.ensemble_cap)
        {
            throw FlagError("--count", ErrorCode::cap_exceeded,
                            "--count: ensemble exceeds the lifetime cap "
                                + std::to_string(cfg.ensemble_cap)
                                + "; use --mode stream");
        }
    }
    else if (o.gap_index)
    {
        throw FlagError("--gap-index", ErrorCode::invalid_config,
                        "--gap-index applies to ensemble mode only");
    }

    std::int64_t const events = o.events.value_or(p.M);
    if (cfg.mode == SimMode::poisson_stream
        && (events < 2 || events > cfg.event_budget))
    {
        throw FlagError("--events", ErrorCode::budget_exceeded,
                        "--events: must lie in [2, "
                            + std::to_string(cfg.event_budget) + "]");
    }
    if (o.nth && (*o.nth < 1 || *o.nth > cfg.event_budget))
    {
        throw FlagError("--nth", ErrorCode::budget_exceeded,
                        "--nth: must lie in [1, event budget]");
    }
    if (o.nth && o.replicas < 100)
    {
        throw FlagError("--replicas", ErrorCode::too_few_replicas,
                        "--replicas: --nth needs at least 100 replicas");
    }
    if (o.gap_index && (*o.gap_index < 0 || *o.gap_index >= p.M))
    {
        throw FlagError("--gap-index", ErrorCode::index_out_of_range,
                        "--gap-index: must lie in [0, M)");
    }
    if (o.gap_index && o.replicas < 2)
    {
        throw FlagError("--replicas", ErrorCode::too_few_replicas,
                        "--replicas: --gap-index needs at least 2 replicas");
    }

    auto make_trace = [&](std::int64_t r) {
        return cfg.mode == SimMode::poisson_stream
                   ? simulate_poisson_stream(cfg, events, r)
                   : simulate_decay_ensemble(cfg, r);
    };

    EventTrace const first = make_trace(0);
    std::vector<GapStats> gaps(static_cast<std::size_t>(cfg.replicas));
    gaps[0] = gap_statistics(first);
    for (std::int64_t r = 1; r < cfg.replicas; ++r)
    {
        gaps[static_cast<std::size_t>(r)] = gap_statistics(make_trace(r));
    }

    Output res;
    res.doc["command"] = "simulate";
    res.doc["config"] = Json{{"params", to_json(p)},
                             {"mode", std::string(to_string(cfg.mode))},
                             {"replicas", cfg.replicas},
                             {"seed", cfg.seed},
                             {"events", static_cast<std::int64_t>(
                                            first.times.size())}};
    res.csv = csv_row({"replica", "statistic", "value", "std_error"});

    Json per_replica = Json::array();
    for (std::int64_t r = 0; r < cfg.replicas; ++r)
    {
        GapStats const& g = gaps[static_cast<std::size_t>(r)];
        per_replica.push_back(Json{{"replica", r}, {"gaps", to_json(g)}});
        double const std_se
            = g.count > 1 ? g.std / std::sqrt(2.0 * static_cast<double>(g.count - 1))
                          : 0.0;
        res.csv += csv_row({std::to_string(r), "gap_mean", fmt(g.mean),
                            fmt(g.mean_std_error)});
        res.csv += csv_row(
            {std::to_string(r), "gap_std", fmt(g.std), fmt(std_se)});
    }
    res.doc["replicas"] = std::move(per_replica);
    res.doc["theory_mean_gap"] = p.tau;

    // Occupancy of the grid intervals by replica 0.
    std::int64_t n_max = 0;
    if (o.occupancy_intervals)
    {
        n_max = *o.occupancy_intervals;
    }
    else if (cfg.mode == SimMode::poisson_stream)
    {
        n_max = std::min<std::int64_t>(
            p.N, static_cast<std::int64_t>(std::floor(first.times.back() / p.tau)));
    }
    if (n_max >= 1)
    {
        OccupancyHistogram const h = attribute("--occupancy-intervals", [&] {
            return interval_occupancy(first, p, n_max);
        });
        res.doc["occupancy"] = to_json(h);
        double const total = static_cast<double>(h.total_intervals);
        for (std::size_t j = 0; j < h.counts.size(); ++j)
        {
            double const f = h.fraction(j);
            res.csv += csv_row({"0", "occupancy_" + std::to_string(j), fmt(f),
                                fmt(std::sqrt(f * (1 - f) / total))});
        }
    }
    else
    {
        res.doc["occupancy"] = nullptr;
    }

    if (cfg.mode == SimMode::poisson_stream && (o.nth || cfg.replicas >= 100))
    {
        SpreadResult const s = attribute("--nth", [&] {
            return nth_event_time_spread(cfg, o.nth.value_or(p.M));
        });
        res.doc["nth_event"] = to_json(s);
        res.csv += csv_row(
            {"all", "nth_event_mean", fmt(s.mean), fmt(s.mean_std_error)});
        res.csv += csv_row({"all", "nth_event_std", fmt(s.std), fmt(s.std_error)});
    }
    else
    {
        res.doc["nth_event"] = nullptr;
    }

    if (cfg.mode == SimMode::depleting_ensemble && cfg.replicas >= 2)
    {
        OrderedGapResult const g = attribute("--gap-index", [&] {
            return ensemble_gap_statistics(cfg, o.gap_index.value_or(p.N));
        });
        res.doc["ordered_gap"] = to_json(g);
        res.csv += csv_row(
            {"all", "ordered_gap_mean", fmt(g.mean), fmt(g.mean_std_error)});
    }
    else
    {
        res.doc["ordered_gap"] = nullptr;
    }

    for (std::size_t i = 0; i < first.times.size(); ++i)
    {
        res.plot += std::to_string(i) + ' ' + fmt(first.times[i]) + '\n';
    }
    return res;
}

DilationScenario resolve_scenario(const Options& o)
{
    if (o.beta)
    {
        attribute("--beta", [&] { return lorentz_factor(*o.beta); });
    }
    if (!o.schwarzschild)
    {
        if (o.r_s || o.r)
        {
            throw FlagError("--schwarzschild", ErrorCode::invalid_scenario,
                            "--rs/--r require --schwarzschild");
        }
        return DilationScenario::velocity(o.beta.value_or(0.0));
    }
    if (!o.r_s || !o.r)
    {
        throw FlagError(o.r_s ? "--r" : "--rs", ErrorCode::invalid_scenario,
                        "--schwarzschild requires both --rs and --r");
    }
    attribute(*o.r_s > 0 ? "--r" : "--rs",
              [&] { return schwarzschild_factor(*o.r_s, *o.r); });
    return o.beta ? DilationScenario::combined(*o.beta, *o.r_s, *o.r)
                  : DilationScenario::schwarzschild(*o.r_s, *o.r);
}

Output run_dilate(const Options& o)
{
    DilationScenario const scenario = resolve_scenario(o);
    double sigma = 0;
    if (o.sigma)
    {
        sigma = *o.sigma;
        if (!(sigma > 0) || !std::isfinite(sigma))
        {
            throw FlagError("--sigma", ErrorCode::invalid_scenario,
                            "--sigma: must be positive and finite");
        }
    }
    else
    {
        ClockParams const p = resolve_params(o);
        check_epsilon(o);
        sigma = std::sqrt(preferred_variance(p, o.epsilon));
    }

    DilatedSigma const d = dilated_std_dev(sigma, scenario);

    Output res;
    res.doc["command"] = "dilate";
    res.doc["scenario"] = to_json(scenario);
    res.doc["result"] = to_json(d);
    res.physics_violation = d.is_blurred();

    auto state = [](const DilationFactor& f, double scale) {
        return f.is_blurred() ? std::string("blurred") : fmt(f.value() * scale);
    };
    res.csv = csv_row({"kind", "beta", "r_s", "r", "sigma_proper", "factor",
                       "sigma_observed"});
    res.csv += csv_row({res.doc["scenario"]["kind"].get<std::string>(),
                        fmt(scenario.beta), fmt(scenario.r_s), fmt(scenario.r),
                        fmt(sigma), state(d.factor, 1.0),
                        state(d.factor, sigma)});

    if (scenario.kind == DilationKind::velocity)
    {
        for (int i = 0; i < 100; ++i)
        {
            double const beta = i / 100.0;
            res.plot += fmt(beta) + ' '
                        + fmt(dilated_std_dev(sigma, DilationScenario::velocity(beta))
                                  .sigma_observed())
                        + '\n';
        }
    }
    else
    {
        DilationScenario sweep = scenario;
        for (int i = 0; i <= 60; ++i)
        {
            // r / r_s from 101 down to 1.0001
            sweep.r = scenario.r_s * (1 + std::pow(10.0, 2.0 - i / 10.0));
            res.plot += fmt(sweep.r) + ' '
                        + fmt(dilated_std_dev(sigma, sweep).sigma_observed())
                        + '\n';
        }
    }
    return res;
}

Output run_limits(const Options& o)
{
    attribute("--lambda", [&] { return make_clock_params(o.lambda, 3.0); });
    double const M = parse_count_value(o.count);
    if (M < 9007199254740992.0)
    {
        attribute("--count", [&] { return make_clock_params(o.lambda, M); });
    }
    if (!(o.safety >= 1) || !std::isfinite(o.safety))
    {
        throw FlagError("--safety", ErrorCode::invalid_safety_factor,
                        "--safety: must be finite and >= 1");
    }
    if (o.cap && (!(*o.cap >= 3) || !std::isfinite(*o.cap)))
    {
        throw FlagError("--cap", ErrorCode::invalid_count,
                        "--cap: must be finite and >= 3");
    }
    if (!(o.planck > 0) || !std::isfinite(o.planck))
    {
        throw FlagError("--planck-time", ErrorCode::invalid_config,
                        "--planck-time: must be positive and finite");
    }

    ClockScale const scale{1.0 / o.lambda, M};
    FeasibilityReport const report
        = limits_report(scale, o.safety, o.cap, o.planck);

    Output res;
    res.doc["command"] = "limits";
    res.doc["scale"]
        = Json{{"tau0", scale.tau0}, {"M", scale.count}, {"tau", scale.tau()}};
    res.doc["safety_factor"] = o.safety;
    res.doc["planck_time"] = o.planck;
    res.doc["cap"] = o.cap ? Json(*o.cap) : Json(nullptr);
    res.doc["feasibility"] = to_json(report);
    res.physics_violation = !report.feasible;

    res.csv = csv_row({"key", "value"});
    for (auto it = res.doc["feasibility"].begin();
         it != res.doc["feasibility"].end(); ++it)
    {
        auto const& v = it.value();
        res.csv += csv_row({it.key(), v.is_number_float()
                                          ? fmt(v.get<double>())
                                          : v.dump()});
    }

    if (report.M_opt)
    {
        double const lo = std::log10(3.0);
        double const hi = std::log10(*report.M_opt);
        for (int i = 0; i < 100; ++i)
        {
            double const m = std::pow(10.0, lo + (hi - lo) * i / 99.0);
            res.plot += fmt(m) + ' ' + fmt(scale.tau0 / std::sqrt(m)) + '\n';
        }
    }
    return res;
}

std::string render(const Output& o, const Options& opt)
{
    if (opt.plot_data)
    {
        return o.plot;
    }
    if (opt.format == "csv")
    {
        return o.csv;
    }
    if (opt.format == "table")
    {
        return dump_table(o.doc);
    }
    return dump_json(o.doc);
}

void write_sink(const Options& o, const std::string& text, std::ostream& out)
{
    if (o.out.empty() || o.out == "-")
    {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
    if (!file)
    {
        throw FlagError("--out", ErrorCode::invalid_config,
                        "--out: cannot open '" + o.out + "' for writing");
    }
    file << text;
}

const char* help_footer = R"(
Output formats:
  json   single document, numbers with 17 significant digits
  csv    profile:  n,probability
         operator: k,variance_term
         simulate: replica,statistic,value,std_error
         dilate:   kind,beta,r_s,r,sigma_proper,factor,sigma_observed
         limits:   key,value
  table  flattened "path  value" listing of the JSON document
  --plot-data overrides --format with two whitespace-separated columns.

Exit codes: 0 ok, 1 internal error, 2 invalid arguments,
            3 infeasible (limits) or blurred (dilate) result with --strict.
Config file (--config): key=value lines using long flag names.)";

void add_common(CLI::App& app, Options& o)
{
    app.add_option("--lambda", o.lambda, "Decay rate lambda [1/s]")
        ->capture_default_str();
    app.add_option("--count", o.count,
                   "Number of elementary processes M (odd, >= 3)")
        ->capture_default_str();
    app.add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    app.add_option("--replicas", o.replicas, "Monte Carlo replicas")
        ->capture_default_str();
    app.add_option("--epsilon", o.epsilon, "Relative tail bound for series")
        ->capture_default_str();
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    app.add_option("--out", o.out, "Output file (default stdout)");
    app.add_flag("--strict", o.strict,
                 "Exit 3 on infeasible or blurred results");
    app.add_flag("--plot-data", o.plot_data,
                 "Emit two-column data for external plotting");
    app.add_option("--threads", o.threads,
                   "Worker threads (0 = all cores); never changes results");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err)
{
    Options o;
    CLI::App app{"Stochastic quantum clock: transition profile, time-operator "
                 "variance, Monte Carlo checks and accuracy limits",
                 "stochclock"};
    app.footer(help_footer);
    app.set_config("--config", "", "Read key=value options from a file");
    app.require_subcommand(1, 1);
    app.fallthrough();
    add_common(app, o);

    auto* profile = app.add_subcommand("profile", "Interval transition profile");
    profile->add_option("--max-index", o.max_index,
                        "Table rows cover |n| <= this (default min(N, 500))");

    auto* op = app.add_subcommand("operator",
                                  "Time-operator expectations and variance");
    op->add_option("--max-index", o.max_index,
                   "CSV/plot rows cover |k| <= this (default min(N, 500))");
    op->add_option("--k", o.ks,
                   "Expectation indices (default -N, -1, 0, 1, N)");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo decay simulation");
    sim->add_option("--mode", o.mode, "stream or ensemble")
        ->check(CLI::IsMember({"stream", "ensemble"}))
        ->capture_default_str();
    sim->add_option("--events", o.events,
                    "Events per replica in stream mode (default M)");
    sim->add_option("--nth", o.nth,
                    "Event index for the spread check (default M)");
    sim->add_option("--gap-index", o.gap_index,
                    "Ensemble gap index k (default N)");
    sim->add_option("--occupancy-intervals", o.occupancy_intervals,
                    "Intervals J^1..J^n binned for occupancy");

    auto* dil = app.add_subcommand("dilate", "Dilated standard deviation");
    dil->add_option("--sigma", o.sigma,
                    "Proper sigma [s] (default from --lambda/--count)");
    dil->add_option("--beta", o.beta, "Velocity v/c");
    dil->add_flag("--schwarzschild", o.schwarzschild,
                  "Static observer near a Schwarzschild mass");
    dil->add_option("--rs", o.r_s, "Schwarzschild radius [m]");
    dil->add_option("--r", o.r, "Radial coordinate [m]");

    auto* lim = app.add_subcommand("limits", "Planck-floor feasibility");
    lim->add_option("--safety", o.safety, "Required multiple of Planck time")
        ->capture_default_str();
    lim->add_option("--cap", o.cap, "Physical upper bound on M");
    lim->add_option("--planck-time", o.planck, "Planck time override [s]")
        ->capture_default_str();

    for (auto* sub : {profile, op, sim, dil, lim})
    {
        sub->fallthrough();
        sub->footer(help_footer);
    }

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    }

    auto fail = [&](const std::string& code, const std::string& flag,
                    const std::string& message, int exit_code) {
        err << "error: " << message << '\n';
        if (o.format == "json" && !o.plot_data)
        {
            Json doc{{"error",
                      Json{{"code", code},
                           {"flag", flag.empty() ? Json(nullptr) : Json(flag)},
                           {"message", message}}}};
            try
            {
                write_sink(o, dump_json(doc), out);
            }
            catch (const FlagError&)
            {
                // sink itself is unusable; stderr already has the message
            }
        }
        return exit_code;
    };

    try
    {
        Output result;
        if (*profile)
        {
            result = run_profile(o);
        }
        else if (*op)
        {
            result = run_operator(o);
        }
        else if (*sim)
        {
            result = run_simulate(o);
        }
        else if (*dil)
        {
            result = run_dilate(o);
        }
        else
        {
            result = run_limits(o);
        }

        write_sink(o, render(result, o), out);
        if (o.strict && result.physics_violation)
        {
            err << "strict: result is "
                << (*dil ? "blurred" : "physically infeasible") << '\n';
            return exit_physics;
        }
        return exit_ok;
    }
    catch (const FlagError& e)
    {
        return fail(std::string(to_string(e.code())), e.flag(), e.what(),
                    exit_invalid);
    }
    catch (const Error& e)
    {
        return fail(std::string(to_string(e.code())), "", e.what(),
                    exit_invalid);
    }
    catch (const std::exception& e)
    {
        return fail("internal", "", e.what(), exit_internal);
    }
}

}  // namespace stochclock::cli
