// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "stochclock/clock_model.hpp"

namespace stochclock
{

//! CODATA 2018 Planck time [s].
inline constexpr double planck_time = 5.391247e-44;

//! Default multiple of the Planck time that tau must reach.
inline constexpr double default_safety_factor = 1e3;

//! Special-relativistic gamma, 1 / sqrt(1 - beta^2), for 0 <= beta < 1.
//! Throws Error{negative_beta} or Error{superluminal}.
double lorentz_factor(double beta);

/*!
 * Dilation factor >= 1, or the blurred state at and inside a horizon.
 *
 * Blurred is a distinct state rather than an infinite double so reports can
 * tell divergence by physics apart from overflow.
 */
class DilationFactor
{
  public:
    static DilationFactor finite(double value) { return DilationFactor(value); }
    static DilationFactor blurred() { return DilationFactor(); }

    bool is_blurred() const noexcept { return !value_; }
    //! Throws Error{invalid_scenario} when blurred.
    double value() const;

    friend DilationFactor operator*(DilationFactor a, DilationFactor b)
    {
        if (a.is_blurred() || b.is_blurred())
        {
            return blurred();
        }
        return finite(*a.value_ * *b.value_);
    }

  private:
    DilationFactor() = default;
    explicit DilationFactor(double v) : value_(v) {}

    std::optional<double> value_;
};

//! Static-observer factor 1 / sqrt(1 - r_s / r); blurred for r <= r_s.
//! r may be +infinity. Throws Error{nonpositive_radius}.
DilationFactor schwarzschild_factor(double r_s, double r);

enum class DilationKind
{
    velocity,
    schwarzschild,
    combined,  //!< product of the velocity and Schwarzschild factors
};

struct DilationScenario
{
    DilationKind kind = DilationKind::velocity;
    double beta = 0;  //!< v / c
    double r_s = 1;   //!< Schwarzschild radius [m]
    double r = 0;     //!< radial coordinate [m]

    static DilationScenario velocity(double beta)
    {
        return {DilationKind::velocity, beta, 1, 0};
    }
    static DilationScenario schwarzschild(double r_s, double r)
    {
        return {DilationKind::schwarzschild, 0, r_s, r};
    }
    static DilationScenario combined(double beta, double r_s, double r)
    {
        return {DilationKind::combined, beta, r_s, r};
    }
};

//! Throws Error{invalid_scenario} wrapping the underlying factor error.
DilationFactor dilation_factor(const DilationScenario& scenario);

struct DilatedSigma
{
    double sigma_proper;
    DilationFactor factor;

    bool is_blurred() const noexcept { return factor.is_blurred(); }
    //! factor * sigma_proper; throws Error{invalid_scenario} when blurred.
    double sigma_observed() const { return factor.value() * sigma_proper; }
};

//! Throws Error{invalid_scenario} for sigma_proper <= 0 or a bad scenario.
DilatedSigma dilated_std_dev(double sigma_proper,
                             const DilationScenario& scenario);

//! Clock size for the accuracy limits; the count is binary64 because
//! physically relevant M (1e20 and beyond) exceed any integer type.
struct ClockScale
{
    double tau0;   //!< [s]
    double count;  //!< M

    static ClockScale of(const ClockParams& p) { return {p.tau0, p.count()}; }
    double tau() const noexcept { return tau0 / count; }
};

struct FeasibilityReport
{
    double tau = 0;        //!< [s]
    double tau_floor = 0;  //!< safety_factor * planck time [s]
    bool feasible = false;
    double margin = 0;     //!< tau / tau_floor
    std::optional<double> sigma_min;  //!< [s], filled by limits_report
    std::optional<double> M_opt;      //!< filled by limits_report
};

//! feasible <=> tau >= safety_factor * t_planck.
//! Throws Error{invalid_safety_factor} for safety_factor < 1, and
//! Error{invalid_config} for a non-positive scale or Planck time.
FeasibilityReport planck_feasible(const ClockScale& scale,
                                  double safety_factor = default_safety_factor,
                                  double t_planck = planck_time);
FeasibilityReport planck_feasible(const ClockParams& params,
                                  double safety_factor = default_safety_factor,
                                  double t_planck = planck_time);

struct MinimalStdDev
{
    double sigma_min;  //!< tau0 / sqrt(M_opt) [s]
    double M_opt;      //!< largest odd M with tau0 / M >= tau_floor (and cap)
};

/*!
 * Smallest sigma = tau0 / sqrt(M) subject to tau0 / M >= tau_floor and
 * M <= M_cap.
 *
 * sigma falls with M, so the optimum is the largest admissible odd M, i.e.
 * min(tau0 / tau_floor, M_cap) rounded down to odd. Above 2^53 every binary64
 * is an even integer; there M_opt is the largest admissible representable
 * value. Throws Error{floor_exceeds_tau0} if no M >= 3 is admissible.
 */
MinimalStdDev minimal_std_dev(double tau0, double tau_floor,
                              std::optional<double> M_cap = std::nullopt);

//! planck_feasible plus the optimum of minimal_std_dev at the same floor.
FeasibilityReport limits_report(const ClockScale& scale,
                                double safety_factor = default_safety_factor,
                                std::optional<double> M_cap = std::nullopt,
                                double t_planck = planck_time);

}  // namespace stochclock
