// SPDX-License-Identifier: Apache-2.0
#include "stochclock/serialize.hpp"

#include <charconv>
#include <cmath>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

namespace stochclock
{
namespace
{

void emit(const Json& j, std::string& out, int depth)
{
    auto indent = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };

    switch (j.type())
    {
        case Json::value_t::object:
        {
            if (j.empty())
            {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it)
            {
                if (!first)
                {
                    out += ",\n";
                }
                first = false;
                indent(depth + 1);
                out += Json(it.key()).dump();
                out += ": ";
                emit(it.value(), out, depth + 1);
            }
            out += '\n';
            indent(depth);
            out += '}';
            return;
        }
        case Json::value_t::array:
        {
            if (j.empty())
            {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i)
            {
                if (i)
                {
                    out += ",\n";
                }
                indent(depth + 1);
                emit(j[i], out, depth + 1);
            }
            out += '\n';
            indent(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

void flatten(const Json& j, const std::string& path,
             std::vector<std::pair<std::string, std::string>>& rows)
{
    if (j.is_object())
    {
        for (auto it = j.begin(); it != j.end(); ++it)
        {
            flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(),
                    rows);
        }
    }
    else if (j.is_array())
    {
        for (std::size_t i = 0; i < j.size(); ++i)
        {
            flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
        }
    }
    else if (j.is_number_float())
    {
        rows.emplace_back(path, format_double(j.get<double>()));
    }
    else if (j.is_string())
    {
        rows.emplace_back(path, j.get<std::string>());
    }
    else
    {
        rows.emplace_back(path, j.dump());
    }
}

template<class T>
Json optional_json(const std::optional<T>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

std::string format_double(double value)
{
    if (!std::isfinite(value))
    {
        return "null";
    }
    char buf[64];
    auto const res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 17);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".e") == std::string::npos)
    {
        s += ".0";
    }
    return s;
}

std::string dump_json(const Json& doc)
{
    std::string out;
    emit(doc, out, 0);
    out += '\n';
    return out;
}

std::string dump_table(const Json& doc)
{
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    std::size_t width = 0;
    for (auto const& [k, v] : rows)
    {
        width = std::max(width, k.size());
    }
    std::string out;
    for (auto const& [k, v] : rows)
    {
        out += k;
        out.append(width - k.size() + 2, ' ');
        out += v;
        out += '\n';
    }
    return out;
}

Json to_json(const ClockParams& p)
{
    return Json{{"lambda", p.lambda}, {"tau0", p.tau0}, {"M", p.M},
                {"N", p.N},           {"tau", p.tau}};
}

Json to_json(const VarianceReport& r)
{
    return Json{{"params", to_json(r.params)},
                {"epsilon", r.epsilon},
                {"truncation_index", optional_json(r.truncation_index)},
                {"tail", optional_json(r.tail)},
                {"series_value", optional_json(r.series_value)},
                {"closed_form", r.closed_form},
                {"closed_form_printed", r.closed_form_printed},
                {"asymptotic", r.asymptotic},
                {"sigma", r.sigma},
                {"sigma_asymptotic", r.sigma_asymptotic},
                {"rel_dev_series_vs_closed",
                 optional_json(r.rel_dev_series_vs_closed)},
                {"rel_dev_vs_asymptotic", optional_json(r.rel_dev_vs_asymptotic)}};
}

Json to_json(const GapStats& s)
{
    return Json{{"mean", s.mean},
                {"std", s.std},
                {"count", s.count},
                {"mean_std_error", s.mean_std_error}};
}

Json to_json(const OccupancyHistogram& h)
{
    Json fractions = Json::array();
    for (std::size_t j = 0; j < h.counts.size(); ++j)
    {
        fractions.push_back(h.fraction(j));
    }
    return Json{{"total_intervals", h.total_intervals},
                {"counts", h.counts},
                {"fractions", fractions}};
}

Json to_json(const SpreadResult& s)
{
    return Json{{"n", s.n},
                {"replicas", s.replicas},
                {"mean", s.mean},
                {"std", s.std},
                {"mean_std_error", s.mean_std_error},
                {"std_error", s.std_error},
                {"theory_mean", s.theory_mean},
                {"theory_std", s.theory_std}};
}

Json to_json(const OrderedGapResult& g)
{
    return Json{{"k", g.k},
                {"replicas", g.replicas},
                {"mean", g.mean},
                {"std", g.std},
                {"mean_std_error", g.mean_std_error},
                {"theory_mean", g.theory_mean}};
}

Json to_json(const DilationFactor& f)
{
    if (f.is_blurred())
    {
        return Json{{"state", "blurred"}};
    }
    return Json{{"state", "finite"}, {"value", f.value()}};
}

Json to_json(const DilatedSigma& s)
{
    Json observed = s.is_blurred()
                        ? Json{{"state", "blurred"}}
                        : Json{{"state", "finite"}, {"value", s.sigma_observed()}};
    return Json{{"sigma_proper", s.sigma_proper},
                {"factor", to_json(s.factor)},
                {"sigma_observed", std::move(observed)}};
}

Json to_json(const DilationScenario& s)
{
    Json j;
    switch (s.kind)
    {
        case DilationKind::velocity:
            j["kind"] = "velocity";
            j["beta"] = s.beta;
            break;
        case DilationKind::schwarzschild:
            j["kind"] = "schwarzschild";
            j["r_s"] = s.r_s;
            j["r"] = s.r;
            break;
        case DilationKind::combined:
            j["kind"] = "combined";
            j["beta"] = s.beta;
            j["r_s"] = s.r_s;
            j["r"] = s.r;
            break;
    }
    return j;
}

Json to_json(const FeasibilityReport& r)
{
    return Json{{"tau", r.tau},
                {"tau_floor", r.tau_floor},
                {"feasible", r.feasible},
                {"margin", r.margin},
                {"sigma_min", optional_json(r.sigma_min)},
                {"M_opt", optional_json(r.M_opt)}};
}

Json to_json(const Error& e)
{
    return Json{{"code", std::string(to_string(e.code()))},
                {"message", e.what()}};
}

}  // namespace stochclock
