// SPDX-License-Identifier: Apache-2.0
#include <bit>
#include <cstdlib>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include <doctest.h>

#include "stochclock/serialize.hpp"

using namespace stochclock;

TEST_CASE("format_double uses 17 significant digits and reads back exactly")
{
    CHECK(format_double(0.01) == "0.01");
    CHECK(format_double(1.0) == "1.0");
    CHECK(format_double(0.1 + 0.2) == "0.30000000000000004");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(format_double(2.0 / 3) == "0.66666666666666663");
    CHECK(format_double(-2.5e21) == "-2.5e+21");

    std::mt19937_64 gen(99);
    for (int i = 0; i < 20000; ++i)
    {
        double const v = std::bit_cast<double>(gen());
        if (!std::isfinite(v))
        {
            continue;
        }
        std::string const s = format_double(v);
        REQUIRE(std::bit_cast<std::uint64_t>(std::strtod(s.c_str(), nullptr))
                == std::bit_cast<std::uint64_t>(v));
        auto const parsed = Json::parse(s);
        REQUIRE(parsed.get<double>() == v);
    }
}

TEST_CASE("documents round-trip through the JSON emitter")
{
    auto const p = make_clock_params(3.0, std::int64_t{1001});
    auto const report = variance_report(p);
    Json const doc = to_json(report);
    Json const back = Json::parse(dump_json(doc));
    CHECK(back == doc);
    CHECK(back["series_value"].get<double>() == *report.series_value);
    CHECK(back["params"]["M"].get<std::int64_t>() == 1001);
    CHECK(back["closed_form_printed"].is_number_float());

    auto const big = to_json(variance_report(make_clock_params(1.0, std::int64_t{1'000'001})));
    CHECK(big["series_value"].is_null());
}

TEST_CASE("blurred results are tagged, not infinite")
{
    auto const blurred
        = to_json(dilated_std_dev(0.01, DilationScenario::schwarzschild(1, 1)));
    CHECK(blurred["factor"]["state"] == "blurred");
    CHECK(blurred["sigma_observed"]["state"] == "blurred");
    CHECK_FALSE(blurred["sigma_observed"].contains("value"));
    CHECK(dump_json(blurred).find("inf") == std::string::npos);

    auto const finite = to_json(dilated_std_dev(0.01, DilationScenario::velocity(0.6)));
    CHECK(finite["sigma_observed"]["state"] == "finite");
    CHECK(finite["sigma_observed"]["value"].get<double>()
          == dilated_std_dev(0.01, DilationScenario::velocity(0.6)).sigma_observed());
}

TEST_CASE("table listing flattens paths")
{
    Json doc{{"a", Json{{"b", 0.5}}}, {"rows", Json::array({1, 2})}, {"s", "x"}};
    std::string const t = dump_table(doc);
    CHECK(t.find("a.b") != std::string::npos);
    CHECK(t.find("rows[1]") != std::string::npos);
    CHECK(t.find("0.5") != std::string::npos);
}

TEST_CASE("error objects")
{
    Error const e(ErrorCode::invalid_count, "bad M");
    auto const j = to_json(e);
    CHECK(j["code"] == "invalid-count");
    CHECK(j["message"] == "bad M");
}
