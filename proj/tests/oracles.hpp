#pragma once

// Independent oracles shared by the unit tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "boole/polynomial.hpp"

namespace oracle {

/// phi(cot t) = cot 2t, so phi^(l)(x) = 0 exactly at x = cot((2j+1) pi / 2^(l+1)).
inline std::vector<double> cot_exceptional_set(int k)
{
    std::vector<double> v{0.0};
    for (int l = 1; l <= k; ++l) {
        const long double denom = std::ldexp(1.0L, l + 1);
        for (long j = 0; j < (1L << l); ++j) {
            const long double t = (2.0L * j + 1.0L) * std::numbers::pi_v<long double> / denom;
            v.push_back(static_cast<double>(std::cos(t) / std::sin(t)));
        }
    }
    std::sort(v.begin(), v.end());
    return v;
}

/// Real roots of p in [lo, hi] by sign changes on a uniform grid, then bisection in doubles.
inline std::vector<double> grid_roots(const boole::IntPoly& p, double lo, double hi, int cells)
{
    std::vector<double> roots;
    const double h = (hi - lo) / cells;
    for (int i = 0; i < cells; ++i) {
        double x0 = lo + i * h;
        double x1 = lo + (i + 1) * h;
        double f0 = p(x0);
        const double f1 = p(x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
            continue;
        }
        if ((f0 < 0) == (f1 < 0) || f1 == 0.0)
            continue;
        for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (x0 + x1);
            if (m == x0 || m == x1)
                break;
            const double fm = p(m);
            if ((fm < 0) == (f0 < 0)) {
                x0 = m;
                f0 = fm;
            } else {
                x1 = m;
            }
        }
        roots.push_back(0.5 * (x0 + x1));
    }
    return roots;
}

} // namespace oracle
