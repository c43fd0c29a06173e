// SPDX-License-Identifier: Apache-2.0
#include "stochclock/dilation_limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stochclock/error.hpp"

namespace stochclock
{
namespace
{

constexpr double exact_integer_limit = 9007199254740992.0;  // 2^53

bool positive_finite(double x)
{
    return x > 0 && std::isfinite(x);
}

// Largest admissible count: tau0 / m >= floor and m <= cap.
double largest_admissible(double tau0, double floor, double cap)
{
    auto admissible = [&](double m) { return m <= cap && tau0 / m >= floor; };

    double m = std::floor(std::min(tau0 / floor, cap));
    if (m < exact_integer_limit)
    {
        if (std::fmod(m, 2.0) == 0)
        {
            m -= 1;
        }
        while (m >= 3 && !admissible(m))
        {
            m -= 2;
        }
        while (m + 2 < exact_integer_limit && admissible(m + 2))
        {
            m += 2;
        }
        return m;
    }

    double const inf = std::numeric_limits<double>::infinity();
    while (!admissible(m))
    {
        m = std::nextafter(m, 0.0);
    }
    while (admissible(std::nextafter(m, inf)))
    {
        m = std::nextafter(m, inf);
    }
    return m;
}

}  // namespace

double lorentz_factor(double beta)
{
    if (std::isnan(beta))
    {
        throw Error(ErrorCode::negative_beta, "beta must be a number");
    }
    if (beta < 0)
    {
        throw Error(ErrorCode::negative_beta, "beta = v/c must be >= 0");
    }
    if (beta >= 1)
    {
        throw Error(ErrorCode::superluminal, "beta = v/c must be < 1");
    }
    // (1 - beta)(1 + beta) keeps relative precision as beta -> 1
    return 1 / std::sqrt((1 - beta) * (1 + beta));
}

double DilationFactor::value() const
{
    if (!value_)
    {
        throw Error(ErrorCode::invalid_scenario,
                    "time measurement is blurred: no finite dilation factor");
    }
    return *value_;
}

DilationFactor schwarzschild_factor(double r_s, double r)
{
    if (!positive_finite(r_s) || !(r > 0))
    {
        throw Error(ErrorCode::nonpositive_radius,
                    "Schwarzschild radius and radial coordinate must be > 0");
    }
    if (r <= r_s)
    {
        return DilationFactor::blurred();
    }
    if (std::isinf(r))
    {
        return DilationFactor::finite(1.0);
    }
    // sqrt(r / (r - r_s)) == 1 / sqrt(1 - r_s / r), without cancellation
    // near the horizon
    return DilationFactor::finite(std::sqrt(r / (r - r_s)));
}

DilationFactor dilation_factor(const DilationScenario& scenario)
{
    try
    {
        switch (scenario.kind)
        {
            case DilationKind::velocity:
                return DilationFactor::finite(lorentz_factor(scenario.beta));
            case DilationKind::schwarzschild:
                return schwarzschild_factor(scenario.r_s, scenario.r);
            case DilationKind::combined:
                return DilationFactor::finite(lorentz_factor(scenario.beta))
                       * schwarzschild_factor(scenario.r_s, scenario.r);
        }
    }
    catch (const Error& e)
    {
        throw Error(ErrorCode::invalid_scenario,
                    std::string("invalid dilation scenario: ") + e.what());
    }
    throw Error(ErrorCode::invalid_scenario, "unknown dilation kind");
}

DilatedSigma dilated_std_dev(double sigma_proper,
                             const DilationScenario& scenario)
{
    if (!positive_finite(sigma_proper))
    {
        throw Error(ErrorCode::invalid_scenario,
                    "proper standard deviation must be positive and finite");
    }
    return {sigma_proper, dilation_factor(scenario)};
}

FeasibilityReport planck_feasible(const ClockScale& scale,
                                  double safety_factor, double t_planck)
{
    if (!(safety_factor >= 1) || !std::isfinite(safety_factor))
    {
        throw Error(ErrorCode::invalid_safety_factor,
                    "safety factor must be finite and >= 1");
    }
    if (!positive_finite(scale.tau0) || !positive_finite(scale.count)
        || !positive_finite(t_planck))
    {
        throw Error(ErrorCode::invalid_config,
                    "tau0, M and the Planck time must be positive and finite");
    }

    FeasibilityReport r;
    r.tau = scale.tau();
    r.tau_floor = safety_factor * t_planck;
    r.feasible = r.tau >= r.tau_floor;
    r.margin = r.tau / r.tau_floor;
    return r;
}

FeasibilityReport planck_feasible(const ClockParams& params,
                                  double safety_factor, double t_planck)
{
    return planck_feasible(ClockScale::of(params), safety_factor, t_planck);
}

MinimalStdDev minimal_std_dev(double tau0, double tau_floor,
                              std::optional<double> M_cap)
{
    if (!positive_finite(tau0) || !positive_finite(tau_floor))
    {
        throw Error(ErrorCode::invalid_config,
                    "tau0 and the floor must be positive and finite");
    }
    if (M_cap && !(*M_cap >= 3))
    {
        throw Error(ErrorCode::invalid_count, "M cap must be >= 3");
    }
    if (tau0 < tau_floor)
    {
        throw Error(ErrorCode::floor_exceeds_tau0,
                    "floor exceeds tau0: no process count is admissible");
    }

    if (!std::isfinite(tau0 / tau_floor))
    {
        throw Error(ErrorCode::invalid_config,
                    "tau0 / floor is not representable in binary64");
    }
    double const cap = M_cap.value_or(std::numeric_limits<double>::infinity());
    double const m = largest_admissible(tau0, tau_floor, cap);
    if (m < 3)
    {
        throw Error(ErrorCode::floor_exceeds_tau0,
                    "tau0 / 3 is below the floor: no odd M >= 3 satisfies "
                    "tau0 / M >= floor");
    }
    return {tau0 / std::sqrt(m), m};
}

FeasibilityReport limits_report(const ClockScale& scale, double safety_factor,
                                std::optional<double> M_cap, double t_planck)
{
    FeasibilityReport r = planck_feasible(scale, safety_factor, t_planck);
    try
    {
        auto const opt = minimal_std_dev(scale.tau0, r.tau_floor, M_cap);
        r.sigma_min = opt.sigma_min;
        r.M_opt = opt.M_opt;
    }
    catch (const Error& e)
    {
        if (e.code() != ErrorCode::floor_exceeds_tau0)
        {
            throw;
        }
    }
    return r;
}

}  // namespace stochclock
