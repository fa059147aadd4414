#pragma once

// JSON and CSV output. Every double is written with 17 significant digits so
// that it reads back to the identical bit pattern.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <sstream>
#include <string>

#include "json.hpp"

#include "boole/dynamics.hpp"
#include "boole/ergodic.hpp"
#include "boole/exceptional.hpp"
#include "boole/measures.hpp"
#include "boole/quadrature.hpp"

namespace boole {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v)
{
    if (std::isnan(v))
        return "null";
    if (std::isinf(v))
        return v > 0 ? "1e999" : "-1e999";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void write_json(std::ostream& os, const Json& j, int indent, int depth)
{
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << '{' << nl;
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first)
                os << ',' << nl;
            first = false;
            os << pad << Json(k).dump() << (indent > 0 ? ": " : ":");
            write_json(os, v, indent, depth + 1);
        }
        os << nl << close_pad << '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        // arrays of scalars stay on one line
        bool flat = true;
        for (const auto& v : j)
            flat = flat && !v.is_structured();
        if (flat) {
            os << '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i)
                    os << (indent > 0 ? ", " : ",");
                write_json(os, j[i], 0, 0);
            }
            os << ']';
            return;
        }
        os << '[' << nl;
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i)
                os << ',' << nl;
            os << pad;
            write_json(os, j[i], indent, depth + 1);
        }
        os << nl << close_pad << ']';
        return;
    }
    case Json::value_t::number_float:
        os << format_double(j.get<double>());
        return;
    default:
        os << j.dump();
        return;
    }
}

} // namespace detail

/// Serialize with 17-significant-digit floats; indent 0 gives compact output.
inline std::string dump(const Json& j, int indent = 2)
{
    std::ostringstream os;
    detail::write_json(os, j, indent, 0);
    return os.str();
}

inline Json to_json(const QuadratureResult& r)
{
    return {{"value", r.value},
            {"error_estimate", r.error_estimate},
            {"subdivisions", r.subdivisions},
            {"converged", r.converged}};
}

inline Json to_json(const KsReport& r)
{
    return {{"statistic", r.statistic}, {"n", r.n}, {"critical_01", r.critical_01}, {"pass", r.pass}};
}

inline Json to_json(const BirkhoffResult& r)
{
    Json trace = Json::array();
    for (const auto& t : r.trace)
        trace.push_back(Json::array({t.k, t.running_average}));
    return {{"estimate", r.estimate}, {"n", r.n},       {"burn_in", r.burn_in},
            {"x0", r.x0},             {"trace", trace}, {"pole_flags", r.pole_flags}};
}

inline Json to_json(const Orbit& o)
{
    Json j{{"a", o.map.a()}, {"b", o.map.b()}, {"x0", o.x0}, {"points", o.points}};
    j["pole_hit"] = o.pole_hit ? Json(*o.pole_hit) : Json(nullptr);
    j["truncated"] = o.truncated;
    return j;
}

inline Json to_json(const ExceptionalSet& s)
{
    Json roots = Json::array();
    Json intervals = Json::array();
    for (const auto& r : s.roots) {
        roots.push_back(r.value);
        const auto [lo, hi] = outward_interval(r);
        intervals.push_back(Json::array({lo, hi}));
    }
    return {{"k", s.k}, {"roots", roots}, {"isolating_intervals", intervals}};
}

/// CSV with a header row; one value per line.
inline std::string values_csv(std::span<const double> values, const std::string& header = "value")
{
    std::string out = header + "\n";
    for (double v : values)
        out += format_double(v) + "\n";
    return out;
}

/// Plot-ready running averages: "k,running_average".
inline std::string trace_csv(const BirkhoffResult& r)
{
    std::string out = "k,running_average\n";
    for (const auto& t : r.trace)
        out += std::to_string(t.k) + "," + format_double(t.running_average) + "\n";
    return out;
}

inline std::string orbit_csv(const Orbit& o)
{
    std::string out = "k,x\n";
    for (std::size_t k = 0; k < o.points.size(); ++k)
        out += std::to_string(k) + "," + format_double(o.points[k]) + "\n";
    return out;
}

inline std::string exceptional_csv(const ExceptionalSet& s)
{
    std::string out = "root,lo,hi,level\n";
    for (const auto& r : s.roots) {
        const auto [lo, hi] = outward_interval(r);
        out += format_double(r.value) + "," + format_double(lo) + "," + format_double(hi) + "," +
               std::to_string(r.level) + "\n";
    }
    return out;
}

} // namespace boole
