// Evaluates a bounded function on the bidisk and its first difference-differential
// along a path that approaches the distinguished boundary.

#include "ncball/ncball.hpp"

#include <cstdio>
#include <iostream>

int main() {
    using namespace ncball;
    const Realization f = example_5_2();
    const MatrixTuple x = MatrixTuple::scalar({0.3, Complex(0.1, 0.4)});
    std::cout << "f(0.3, 0.1+0.4i) = " << eval(f, x)(0, 0) << '\n';

    std::cout << "coefficients up to degree 2:\n";
    for (const Word& w : words_below(2, 3)) {
        const Complex c = power_series_coefficient(f, w);
        std::printf("  c[%s] = %+.6f\n", w.to_string().c_str(), c.real());
    }

    std::cout << "\n  epsilon      |delta_1 f(0, x(eps))|\n";
    for (double eps : {0.1, 0.01, 0.001}) {
        const Complex v = delta_coordinate(f, builtin_path(eps), 1);
        std::printf("  %-10g   %.6f\n", eps, std::abs(v));
    }
}
