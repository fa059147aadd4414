// Points whose orbit lands on the pole within k steps, with their isolating intervals.
#include <cstdio>
#include <cstdlib>

#include "boole/exceptional.hpp"

int main(int argc, char** argv)
{
    const int k = argc > 1 ? std::atoi(argv[1]) : 3;
    const boole::ExceptionalSet set = boole::exceptional_set(k);
    std::printf("|A_%d| = %zu\n", k, set.size());
    for (const auto& r : set.roots) {
        const auto [lo, hi] = boole::outward_interval(r);
        std::printf("level %d  %+.17g  [%.17g, %.17g]\n", r.level, r.value, lo, hi);
    }
}
