// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stochclock
{

enum class ErrorCode
{
    invalid_rate,
    invalid_count,
    index_out_of_range,
    time_ordering,
    nonpositive_index,
    invalid_epsilon,
    invalid_config,
    cap_exceeded,
    budget_exceeded,
    too_few_events,
    too_few_replicas,
    range_exceeds_trace,
    negative_beta,
    superluminal,
    nonpositive_radius,
    invalid_scenario,
    invalid_safety_factor,
    floor_exceeds_tau0,
};

//! Stable identifier used in structured (JSON) error output.
std::string_view to_string(ErrorCode code) noexcept;

//! Domain error raised by every library operation on invalid input.
class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace stochclock
