#pragma once

// The aggregated numerical verification suite behind `boole verify`.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numbers>
#include <string>
#include <vector>

#include "boole/dynamics.hpp"
#include "boole/ergodic.hpp"
#include "boole/io.hpp"
#include "boole/measures.hpp"
#include "boole/parametric.hpp"

namespace boole {

struct CheckResult {
    enum class Kind { within, at_most, below };

    std::string name;
    double value = 0.0;
    double target = 0.0;
    double abs_error = 0.0;
    double threshold = 0.0; ///< tolerance for `within`, unused otherwise
    Kind kind = Kind::within;
    bool converged = true;
    bool pass = false;
};

namespace detail {

inline CheckResult within(std::string name, const QuadratureResult& r, double target, double threshold)
{
    CheckResult c{std::move(name), r.value, target, std::abs(r.value - target), threshold,
                  CheckResult::Kind::within, r.converged, false};
    c.pass = c.converged && c.abs_error <= threshold;
    return c;
}

inline CheckResult failed(std::string name, double target, double threshold, CheckResult::Kind kind)
{
    return {std::move(name), std::nan(""), target, std::nan(""), threshold, kind, false, false};
}

} // namespace detail

/// Run every check. tol is the quadrature tolerance; each check's pass threshold is fixed.
inline std::vector<CheckResult> run_verification(double tol = kDefaultIdentityTol, std::uint64_t seed = 1)
{
    using detail::within;
    std::vector<CheckResult> out;

    out.push_back(within("G(0)", G(0.0, tol), 0.0, 0.0));
    const QuadratureResult g1 = G(1.0, tol);
    out.push_back(within("G(1)", g1, kLn2, 1e-9));
    for (double eps : {0.01, 0.04, 0.25}) {
        const QuadratureResult ge = G(eps, tol);
        const QuadratureResult diff{g1.value - ge.value, g1.error_estimate + ge.error_estimate,
                                    g1.subdivisions + ge.subdivisions, g1.converged && ge.converged};
        out.push_back(within("G(1)-G(eps) eps=" + detail::short_number(eps), diff,
                             kLn2 - std::log1p(std::sqrt(eps)), 1e-7));
    }
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        const QuadratureResult ge = G(eps, tol);
        CheckResult c{"G(eps)<=sqrt(eps) eps=" + detail::short_number(eps), ge.value, std::sqrt(eps),
                      std::abs(ge.value - std::sqrt(eps)), 0.0, CheckResult::Kind::at_most, ge.converged, false};
        c.pass = c.converged && c.value <= c.target;
        out.push_back(c);
    }
    for (double t : {0.25, 0.5, 1.0})
        out.push_back(within("sqrt_t_identity t=" + detail::short_number(t), sqrt_t_integral(t, tol), std::sqrt(t), 1e-8));
    for (double t : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const std::string name = "G_prime t=" + detail::short_number(t);
        try {
            const double numeric = G_prime_numeric(t, 1e-4, std::min(tol, 1e-12));
            out.push_back(within(name, {numeric, 0.0, 0, true}, G_prime_closed(t), 1e-6));
        } catch (const std::exception&) {
            out.push_back(detail::failed(name, G_prime_closed(t), 1e-6, CheckResult::Kind::within));
        }
    }

    const auto forms = equivalent_forms(tol);
    double spread = 0.0;
    bool forms_converged = true;
    for (const auto& [name, r] : forms) {
        out.push_back(within("form " + name, r, kLn2, 1e-8));
        forms_converged = forms_converged && r.converged;
        for (const auto& [other, s] : forms)
            spread = std::max(spread, std::abs(r.value - s.value));
    }
    out.push_back(within("forms pairwise", {spread, 0.0, 0, forms_converged}, 0.0, 2e-8));

    auto identity = [&](const std::string& label, auto f, std::optional<double> exact) {
        const BooleIdentity b = boole_identity_check(f, tol);
        QuadratureResult rhs = b.rhs;
        rhs.converged = rhs.converged && b.lhs.converged;
        out.push_back(within("boole_identity " + label, rhs, b.lhs.value, 1e-8));
        if (exact)
            out.push_back(within("boole_identity " + label + " value", b.lhs, *exact, 1e-8));
    };
    identity("gaussian", [](double x) { return std::exp(-x * x); }, std::sqrt(std::numbers::pi));
    identity("cauchy", [](double x) { return CauchyDist{}.pdf(x); }, 1.0);
    identity("quartic", [](double x) { return 1.0 / (1.0 + x * x * x * x); }, std::numbers::pi / std::sqrt(2.0));

    out.push_back(within("lyapunov_integral a=0 b=1", lyapunov_integral(0.0, 1.0, tol), kLn2, 1e-8));
    out.push_back(within("lyapunov_integral a=5 b=0.1", lyapunov_integral(5.0, 0.1, tol), kLn2, 1e-8));
    out.push_back(within("lyapunov_integral decomposed", lyapunov_integral_decomposed(tol), kLn2, 1e-8));

    for (const auto& [a, b] : {std::pair{0.0, 1.0}, std::pair{2.0, 0.5}}) {
        const BooleMap map(a, b);
        const CauchyDist dist = CauchyDist::invariant_for(map);
        const auto pushed = push_forward(map, cauchy_sample(dist, seed, 100000));
        const KsReport ks = ks_statistic(pushed, dist);
        CheckResult c{"ks_pushforward a=" + detail::short_number(a) + " b=" + detail::short_number(b), ks.statistic,
                      ks.critical_01, std::abs(ks.statistic - ks.critical_01), 0.0, CheckResult::Kind::below, true,
                      ks.pass};
        out.push_back(c);
    }
    return out;
}

inline bool all_pass(const std::vector<CheckResult>& checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

/// {"check_name": {"value", "target", "abs_error", "pass", ...}}
inline Json to_json(const std::vector<CheckResult>& checks)
{
    Json j = Json::object();
    for (const auto& c : checks) {
        Json entry{{"value", c.value}, {"target", c.target}, {"abs_error", c.abs_error}, {"pass", c.pass}};
        entry["converged"] = c.converged;
        switch (c.kind) {
        case CheckResult::Kind::within:
            entry["criterion"] = "abs_error <= " + detail::short_number(c.threshold);
            break;
        case CheckResult::Kind::at_most:
            entry["criterion"] = "value <= target";
            break;
        case CheckResult::Kind::below:
            entry["criterion"] = "value < target";
            break;
        }
        j[c.name] = std::move(entry);
    }
    return j;
}

} // namespace boole
