// Searches for large values of a realization over random matrix points of the
// polydisk and reports the best lower bound on the supremum found.

#include "ncball/ncball.hpp"

#include <cstdio>

int main() {
    using namespace ncball;
    const NcFunction f = example_5_2();
    const OperatorBall ball = polydisk(2);
    for (int level = 1; level <= 3; ++level) {
        const ProbeReport rep = estimate_sup(f, ball, level, 400, 7);
        std::printf("level %d: best %.9f after %zu records (%d failures)\n", level, rep.best, rep.trajectory.size(),
                    rep.failures);
    }
}
