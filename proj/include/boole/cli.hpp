#pragma once

// Command implementations behind the `boole` executable. Argument parsing
// lives in tools/boole.cpp; everything here works on a validated RunConfig
// and returns the text to emit plus the exit status.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "boole/dynamics.hpp"
#include "boole/ergodic.hpp"
#include "boole/exceptional.hpp"
#include "boole/io.hpp"
#include "boole/measures.hpp"
#include "boole/verify.hpp"

namespace boole::cli {

enum ExitStatus : int { kOk = 0, kVerificationFailure = 1, kUsageError = 2 };

enum class Format { json, csv };

struct RunConfig {
    std::string subcommand;
    double a = 0.0;
    double b = 1.0;
    std::int64_t n = 1000000;
    std::uint64_t seed = 1;
    std::optional<double> x0;
    std::string observable = "lyapunov";
    double tol = kDefaultIdentityTol;
    Format format = Format::json;
    std::string output; ///< empty: standard output
    std::int64_t burn_in = 0;
    int k = 1;
    int replicas = 1;
    unsigned threads = 0; ///< 0: hardware concurrency
    double pole_tolerance = kDefaultPoleTolerance;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& subcommands()
{
    static const std::vector<std::string> names{"lyapunov", "birkhoff", "verify", "orbit", "exceptional", "sample"};
    return names;
}

/// Reject invalid configurations before any computation starts.
inline void validate(const RunConfig& c)
{
    if (std::find(subcommands().begin(), subcommands().end(), c.subcommand) == subcommands().end())
        throw UsageError("unknown subcommand '" + c.subcommand + "'");
    if (!std::isfinite(c.a))
        throw UsageError("--a must be finite");
    if (!(c.b > 0.0) || !std::isfinite(c.b))
        throw UsageError("--b must be a positive finite number");
    if (c.n < 1)
        throw UsageError("--n must be at least 1");
    if (c.burn_in < 0)
        throw UsageError("--burn-in must be non-negative");
    if (c.x0 && !std::isfinite(*c.x0))
        throw UsageError("--x0 must be finite");
    if (!(c.tol > 0.0))
        throw UsageError("--tol must be positive");
    if (c.replicas < 1)
        throw UsageError("--replicas must be at least 1");
    if (!(c.pole_tolerance > 0.0))
        throw UsageError("--pole-tol must be positive");
    if (c.subcommand == "exceptional" && (c.k < 1 || c.k > kDefaultDepthCap))
        throw UsageError("--k must lie in [1, " + std::to_string(kDefaultDepthCap) + "]");
    if (c.subcommand == "birkhoff" && !builtin_observables(BooleMap(c.a, c.b)).contains(c.observable))
        throw UsageError("unknown observable '" + c.observable + "'");
}

/// Apply keys of a JSON object onto a config. Keys in `skip` were set on the command line and win.
inline void apply_json(RunConfig& c, const Json& j, const std::vector<std::string>& skip = {})
{
    if (!j.is_object())
        throw UsageError("config file must hold a JSON object");
    auto wanted = [&](const char* key) {
        return j.contains(key) && std::find(skip.begin(), skip.end(), key) == skip.end();
    };
    try {
        if (wanted("a"))
            c.a = j["a"].get<double>();
        if (wanted("b"))
            c.b = j["b"].get<double>();
        if (wanted("n"))
            c.n = j["n"].get<std::int64_t>();
        if (wanted("seed"))
            c.seed = j["seed"].get<std::uint64_t>();
        if (wanted("x0"))
            c.x0 = j["x0"].is_null() ? std::nullopt : std::optional<double>(j["x0"].get<double>());
        if (wanted("observable"))
            c.observable = j["observable"].get<std::string>();
        if (wanted("tol"))
            c.tol = j["tol"].get<double>();
        if (wanted("format")) {
            const auto f = j["format"].get<std::string>();
            if (f != "json" && f != "csv")
                throw UsageError("format must be json or csv");
            c.format = f == "csv" ? Format::csv : Format::json;
        }
        if (wanted("output"))
            c.output = j["output"].get<std::string>();
        if (wanted("burn_in"))
            c.burn_in = j["burn_in"].get<std::int64_t>();
        if (wanted("k"))
            c.k = j["k"].get<int>();
        if (wanted("replicas"))
            c.replicas = j["replicas"].get<int>();
        if (wanted("threads"))
            c.threads = j["threads"].get<unsigned>();
        if (wanted("pole_tolerance"))
            c.pole_tolerance = j["pole_tolerance"].get<double>();
    } catch (const Json::exception& e) {
        throw UsageError(std::string("bad config value: ") + e.what());
    }
}

struct CommandOutput {
    int status = kOk;
    std::string out; ///< report (JSON or CSV)
    std::string err; ///< diagnostics
};

namespace detail {

inline unsigned thread_count(const RunConfig& c)
{
    return c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
}

inline std::vector<double> starts(const RunConfig& c, const BooleMap& map)
{
    if (c.x0)
        return std::vector<double>(static_cast<std::size_t>(c.replicas), *c.x0);
    return replica_starts(map, c.seed, static_cast<std::size_t>(c.replicas));
}

/// Shared driver for lyapunov and birkhoff: one run per replica, reduced in replica order.
template <class Run>
CommandOutput averages(const RunConfig& c, const BooleMap& map, const std::string& observable,
                       std::optional<double> target, Run&& run)
{
    const auto x0s = starts(c, map);
    struct Outcome {
        BirkhoffResult result;
        bool overflow = false;
        std::size_t failure_index = 0;
    };
    auto outcomes = run_replicas(
        x0s.size(),
        [&](std::size_t i) {
            try {
                return Outcome{run(x0s[i]), false, 0};
            } catch (const OrbitOverflowError& e) {
                return Outcome{e.partial(), true, e.index()};
            }
        },
        thread_count(c));

    CommandOutput o;
    Json report{{"subcommand", c.subcommand}, {"observable", observable}, {"a", map.a()}, {"b", map.b()},
                {"n", c.n},                   {"burn_in", c.burn_in},     {"seed", c.seed}};
    report["x0_source"] = c.x0 ? "given" : "cauchy_sample";
    report["target"] = target ? Json(*target) : Json(nullptr);

    Json runs = Json::array();
    KahanSum total;
    double worst = 0.0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& r = outcomes[i].result;
        Json j = to_json(r);
        j["replica"] = i;
        if (target) {
            j["abs_error"] = std::abs(r.estimate - *target);
            worst = std::max(worst, std::abs(r.estimate - *target));
        }
        if (outcomes[i].overflow) {
            j["overflow_at"] = outcomes[i].failure_index;
            o.status = kVerificationFailure;
            o.err += "replica " + std::to_string(i) + ": orbit overflowed at iterate " +
                     std::to_string(outcomes[i].failure_index) + "\n";
        }
        total += r.estimate;
        runs.push_back(std::move(j));
    }

    if (c.format == Format::csv) {
        std::string csv = "replica,k,running_average\n";
        for (std::size_t i = 0; i < outcomes.size(); ++i)
            for (const auto& t : outcomes[i].result.trace)
                csv += std::to_string(i) + "," + std::to_string(t.k) + "," + format_double(t.running_average) + "\n";
        o.out = csv;
        return o;
    }

    if (outcomes.size() == 1) {
        for (auto& [k, v] : runs[0].items())
            if (k != "replica")
                report[k] = v;
    } else {
        const double mean = total.value() / static_cast<double>(outcomes.size());
        report["estimate"] = mean;
        if (target) {
            report["abs_error"] = std::abs(mean - *target);
            report["max_replica_abs_error"] = worst;
        }
        report["replicas"] = std::move(runs);
    }
    o.out = dump(report) + "\n";
    return o;
}

} // namespace detail

inline CommandOutput cmd_lyapunov(const RunConfig& c)
{
    const BooleMap map(c.a, c.b);
    return detail::averages(c, map, "lyapunov", kLn2, [&](double x0) {
        return lyapunov_exponent(map, x0, static_cast<std::size_t>(c.n), static_cast<std::size_t>(c.burn_in),
                                 c.pole_tolerance);
    });
}

inline CommandOutput cmd_birkhoff(const RunConfig& c)
{
    const BooleMap map(c.a, c.b);
    const auto catalog = builtin_observables(map);
    const Observable& obs = catalog.at(c.observable);
    return detail::averages(c, map, obs.name, obs.expected, [&](double x0) {
        return birkhoff_average(map, obs, x0, static_cast<std::size_t>(c.n), static_cast<std::size_t>(c.burn_in),
                                c.pole_tolerance);
    });
}

inline CommandOutput cmd_verify(const RunConfig& c)
{
    const auto checks = run_verification(c.tol, c.seed);
    CommandOutput o;
    o.status = all_pass(checks) ? kOk : kVerificationFailure;
    if (c.format == Format::csv) {
        o.out = "check,value,target,abs_error,converged,pass\n";
        for (const auto& ch : checks)
            o.out += "\"" + ch.name + "\"," + format_double(ch.value) + "," + format_double(ch.target) + "," +
                     format_double(ch.abs_error) + "," + (ch.converged ? "true" : "false") + "," +
                     (ch.pass ? "true" : "false") + "\n";
    } else {
        o.out = dump(to_json(checks)) + "\n";
    }
    for (const auto& ch : checks)
        if (!ch.pass)
            o.err += "FAIL " + ch.name + "\n";
    return o;
}

inline CommandOutput cmd_orbit(const RunConfig& c)
{
    const BooleMap map(c.a, c.b);
    const double x0 = c.x0 ? *c.x0 : replica_starts(map, c.seed, 1).front();
    const Orbit orbit = iterate_orbit(map, x0, static_cast<std::size_t>(c.n), c.pole_tolerance);
    CommandOutput o;
    o.out = c.format == Format::csv ? orbit_csv(orbit) : dump(to_json(orbit)) + "\n";
    if (orbit.truncated) {
        o.status = kVerificationFailure;
        o.err = "orbit truncated after " + std::to_string(orbit.points.size() - 1) + " steps (non-finite value)\n";
    }
    return o;
}

inline CommandOutput cmd_exceptional(const RunConfig& c)
{
    const ExceptionalSet set = exceptional_set(c.k);
    return {kOk, c.format == Format::csv ? exceptional_csv(set) : dump(to_json(set)) + "\n", ""};
}

inline CommandOutput cmd_sample(const RunConfig& c)
{
    const auto values = cauchy_sample(CauchyDist(c.a, c.b), c.seed, static_cast<std::size_t>(c.n));
    return {kOk, c.format == Format::csv ? values_csv(values) : dump(Json(values), 0) + "\n", ""};
}

/// Validate and dispatch. Usage problems map to exit status 2.
inline CommandOutput run(const RunConfig& c)
{
    try {
        validate(c);
    } catch (const UsageError& e) {
        return {kUsageError, "", std::string("usage error: ") + e.what() + "\n"};
    }
    if (c.subcommand == "lyapunov")
        return cmd_lyapunov(c);
    if (c.subcommand == "birkhoff")
        return cmd_birkhoff(c);
    if (c.subcommand == "verify")
        return cmd_verify(c);
    if (c.subcommand == "orbit")
        return cmd_orbit(c);
    if (c.subcommand == "exceptional")
        return cmd_exceptional(c);
    return cmd_sample(c);
}

} // namespace boole::cli
