// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <json.hpp>

#include "stochclock/clock_model.hpp"
#include "stochclock/decay_sim.hpp"
#include "stochclock/dilation_limits.hpp"
#include "stochclock/error.hpp"
#include "stochclock/time_operator.hpp"

namespace stochclock
{

using Json = nlohmann::ordered_json;

//! Shortest of %.17g formatting; always carries a '.' or exponent so the
//! value reads back as floating point. Round-trips binary64 exactly.
std::string format_double(double value);

//! Pretty-printed JSON with every floating-point number in format_double
//! form. Object members keep insertion order.
std::string dump_json(const Json& doc);

//! Flattened "path  value" listing of a document for --format table.
std::string dump_table(const Json& doc);

Json to_json(const ClockParams& params);
Json to_json(const VarianceReport& report);
Json to_json(const GapStats& stats);
Json to_json(const OccupancyHistogram& histogram);
Json to_json(const SpreadResult& spread);
Json to_json(const OrderedGapResult& gap);
Json to_json(const DilationFactor& factor);
Json to_json(const DilatedSigma& sigma);
Json to_json(const DilationScenario& scenario);
Json to_json(const FeasibilityReport& report);
Json to_json(const Error& error);

}  // namespace stochclock
