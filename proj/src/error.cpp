// SPDX-License-Identifier: Apache-2.0
#include "stochclock/error.hpp"

namespace stochclock
{

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code)
    {
        case ErrorCode::invalid_rate: return "invalid-rate";
        case ErrorCode::invalid_count: return "invalid-count";
        case ErrorCode::index_out_of_range: return "index-out-of-range";
        case ErrorCode::time_ordering: return "time-ordering";
        case ErrorCode::nonpositive_index: return "nonpositive-index";
        case ErrorCode::invalid_epsilon: return "invalid-epsilon";
        case ErrorCode::invalid_config: return "invalid-config";
        case ErrorCode::cap_exceeded: return "cap-exceeded";
        case ErrorCode::budget_exceeded: return "budget-exceeded";
        case ErrorCode::too_few_events: return "too-few-events";
        case ErrorCode::too_few_replicas: return "too-few-replicas";
        case ErrorCode::range_exceeds_trace: return "range-exceeds-trace";
        case ErrorCode::negative_beta: return "negative-beta";
        case ErrorCode::superluminal: return "superluminal";
        case ErrorCode::nonpositive_radius: return "nonpositive-radius";
        case ErrorCode::invalid_scenario: return "invalid-scenario";
        case ErrorCode::invalid_safety_factor: return "invalid-safety-factor";
        case ErrorCode::floor_exceeds_tau0: return "floor-exceeds-tau0";
    }
    return "unknown";
}

}  // namespace stochclock
