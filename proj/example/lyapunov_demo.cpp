// Estimate the Lyapunov exponent of a Boole map three ways and print the running averages.
#include <cstdio>
#include <cstdlib>

#include "boole/ergodic.hpp"
#include "boole/parametric.hpp"

int main(int argc, char** argv)
{
    const double a = argc > 1 ? std::atof(argv[1]) : 0.0;
    const double b = argc > 2 ? std::atof(argv[2]) : 1.0;
    const boole::BooleMap map(a, b);

    const double x0 = boole::replica_starts(map, 1, 1)[0];
    const boole::BirkhoffResult orbit = boole::lyapunov_exponent(map, x0, 10000000);
    for (const auto& t : orbit.trace)
        std::printf("%10zu  %.10f\n", t.k, t.running_average);

    const boole::MonteCarloEstimate mc = boole::monte_carlo_expectation(
        boole::CauchyDist::invariant_for(map), [&](double x) { return boole::lyapunov_term(map, x); }, 2, 1000000);
    const boole::QuadratureResult quad = boole::lyapunov_integral(a, b);

    std::printf("birkhoff     %.12f\n", orbit.estimate);
    std::printf("monte carlo  %.12f +- %.1e\n", mc.estimate, mc.standard_error);
    std::printf("quadrature   %.12f\n", quad.value);
    std::printf("ln 2         %.12f\n", boole::kLn2);
}
