// Integral identities around ln 2 and Boole's change of variables.
#include <cmath>
#include <cstdio>

#include "boole/parametric.hpp"

int main()
{
    for (const auto& [name, r] : boole::equivalent_forms())
        std::printf("%-28s %.15f  err %.1e\n", name.c_str(), r.value, r.error_estimate);

    for (double t : {0.25, 0.5, 1.0})
        std::printf("G(%g) = %.15f   G'(%g) = %.15f\n", t, boole::G(t).value, t, boole::G_prime_closed(t));

    const auto id = boole::boole_identity_check([](double x) { return std::exp(-x * x); });
    std::printf("gaussian: %.15f vs %.15f  gap %.1e\n", id.lhs.value, id.rhs.value, id.gap);
}
