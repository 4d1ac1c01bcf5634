#include "test_support.hpp"

#include <catch_amalgamated.hpp>

using namespace ncball;
using namespace ncball::testing;

namespace {

Complex scalar_value(const NcFunction& f, std::initializer_list<Complex> x) { return f(MatrixTuple::scalar(x))(0, 0); }

/// Independent oracle for Δ of Z1·Z2: multiply the 2×2 blocks by hand.
Complex block_product_upper_right(Complex h1, Complex x1, Complex h2, Complex x2) {
    // [[0, h1], [0, x1]] · [[0, h2], [0, x2]] = [[0, h1·x2], [0, x1·x2]]
    (void)x1;
    (void)h2;
    return h1 * x2;
}

}  // namespace

TEST_CASE("first difference of the bidisk example", "[ncdiff]") {
    const NcFunction f = example_5_2();
    CHECK(std::abs(delta_first(f, {0.0, 0.0}, {1.0, 0.0}) - 0.5) <= 1e-15);

    Rng rng(61);
    for (int i = 0; i < 1000; ++i) {
        const Complex x1 = disk_point(rng), x2 = disk_point(rng);
        const Complex expected = (x2 - 1.0) / (x1 + x2 - 2.0);
        CHECK(std::abs(delta_first(f, {x1, x2}, {1.0, 0.0}) - expected) <= 1e-10);
    }
}

TEST_CASE("first difference of polynomials", "[ncdiff]") {
    Rng rng(62);
    const NcFunction z1z2 = parse("z1*z2", 2);
    const NcFunction z2 = parse("z2", 2);
    for (int i = 0; i < 50; ++i) {
        const Complex x1 = random_complex(rng), x2 = random_complex(rng);
        const Complex h1 = random_complex(rng), h2 = random_complex(rng);
        CHECK(std::abs(delta_first(z1z2, {x1, x2}, {h1, h2}) - block_product_upper_right(h1, x1, h2, x2)) <= 1e-14);
        CHECK(delta_first(z2, {x1, x2}, {h1, h2}) == h2);
    }
    CHECK_THROWS_AS(delta_first(z2, {0.1}, {1.0}), DimensionMismatch);
}

TEST_CASE("first difference is linear in the direction", "[ncdiff][property]") {
    Rng rng(63);
    const NcFunction ex = example_5_2();
    for (int trial = 0; trial < 100; ++trial) {
        const NcFunction f = trial % 2 ? ex : NcFunction(random_poly(rng, 2, 0, 4, 6));
        const std::vector<Complex> x{disk_point(rng, 0.9), disk_point(rng, 0.9)};
        const std::vector<Complex> h{random_complex(rng), random_complex(rng)};
        const std::vector<Complex> k{random_complex(rng), random_complex(rng)};
        const Complex a = random_complex(rng);
        const std::vector<Complex> mix{a * h[0] + k[0], a * h[1] + k[1]};
        const Complex lhs = delta_first(f, x, mix);
        const Complex rhs = a * delta_first(f, x, h) + delta_first(f, x, k);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("coordinate differences equal the size-one remainder factors", "[ncdiff][property]") {
    Rng rng(64);
    const Realization f = example_5_2();
    for (int i = 0; i < 200; ++i) {
        const std::vector<Complex> x{disk_point(rng), disk_point(rng)};
        const auto pt = MatrixTuple::scalar(x);
        for (int j = 1; j <= 2; ++j) {
            const Complex g = remainder_factor(f, Word(2, {j}))(pt)(0, 0);
            CHECK(std::abs(delta_coordinate(f, x, j) - g) <= 1e-10);
        }
    }
}

TEST_CASE("first difference at the origin matches a forward difference", "[ncdiff][property]") {
    Rng rng(65);
    const double tau = 1e-5;
    for (int trial = 0; trial < 40; ++trial) {
        const NcFunction f = trial % 2 ? NcFunction(example_5_2()) : NcFunction(random_poly(rng, 2, 0, 3, 5));
        for (int j = 1; j <= 2; ++j) {
            const Complex d = delta_coordinate(f, std::vector<Complex>{0.0, 0.0}, j);
            const Complex shifted = j == 1 ? scalar_value(f, {tau, 0.0}) : scalar_value(f, {0.0, tau});
            const Complex fd = (shifted - scalar_value(f, {0.0, 0.0})) / tau;
            CHECK(std::abs(d - fd) <= 1e-3);
        }
    }
}

TEST_CASE("blowup of the first difference along the boundary path", "[ncdiff]") {
    const NcFunction f = example_5_2();
    for (double eps : {0.1, 0.01, 0.001}) {
        const auto x = builtin_path(eps);
        const double predicted = std::sqrt(0.25 + 0.25 / (eps * eps));
        const double got = std::abs(delta_coordinate(f, x, 1));
        CHECK(std::abs(got - predicted) <= 0.01 * predicted);
        CHECK(std::abs(got - predicted) <= 1e-6 * predicted);
    }
    CHECK(std::abs(delta_coordinate(f, builtin_path(0.001), 1)) >= 400.0);
}

TEST_CASE("TT identity for the bidisk example", "[ncdiff]") {
    const Realization f = example_5_2();
    Rng rng(66);
    for (int i = 0; i < 100; ++i) {
        const auto x = MatrixTuple::scalar({disk_point(rng), disk_point(rng)});
        CHECK(tt_check(f, x, 1, 1e-12).passed);
    }
    for (int i = 0; i < 60; ++i) {
        const int n = 1 + i % 3, N = 1 + i % 3;
        const MatrixTuple x = sample_in_ball(polydisk(2), n, 0.2, rng);
        const TTReport rep = tt_check(f, x, N);
        CHECK(rep.passed);
        CHECK(rep.defect <= 1e-9);
    }
    CHECK_THROWS_AS(tt_check(f, MatrixTuple::scalar({0.1, 0.1}), 0), DomainError);
    CHECK_THROWS_AS(tt_check(f, MatrixTuple::scalar({0.1, 0.1}), 17), BudgetExceeded);
}

TEST_CASE("TT identity for random realizations and polynomials", "[ncdiff][property]") {
    Rng rng(67);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 1 + trial % 3;
        const OperatorBall ball = trial % 2 ? row_ball(d) : polydisk(d);
        const Eigen::Index sp = ball.pencil().rows(), sq = ball.pencil().cols();
        Matrix dm = random_matrix(rng, sq, sp);
        dm *= 0.9 / op_norm(dm);
        const Realization f(ball.pencil(), 1, random_complex(rng), random_matrix(rng, 1, sp), random_matrix(rng, sq, 1), dm);
        const MatrixTuple x = sample_in_ball(ball, 1 + trial % 3, 0.3, rng);
        CHECK(tt_check(f, x, 1 + trial % 3).defect <= 1e-9 * std::max(1.0, op_norm(eval(f, x))));

        const auto p = random_poly(rng, d, 0, 4, 6);
        const MatrixTuple y = random_point(rng, 1 + trial % 3, d, 0.5);
        CHECK(tt_check(p, y, 1 + trial % 4).passed);
        CHECK(tt_check(p, y, p.degree() + 1).defect == 0.0);
    }
}

TEST_CASE("one-variable difference quotient", "[ncdiff]") {
    const NcFunction sq = parse("z1^2", 1), z = parse("z1", 1), c = parse("3 - 2i", 1);
    Rng rng(68);
    for (int i = 0; i < 100; ++i) {
        const Complex x = random_complex(rng), y = random_complex(rng);
        CHECK(std::abs(d1_difference_quotient(sq, x, y) - (x + y)) <= 1e-12 * (1.0 + std::abs(x + y)));
        CHECK(std::abs(d1_difference_quotient(z, x, y) - 1.0) <= 1e-12);
        CHECK(std::abs(d1_difference_quotient(c, x, y)) == 0.0);
        CHECK(std::abs(d1_difference_quotient(sq, x, y) - d1_block_difference(sq, x, y)) <= 1e-9);
    }
    const Complex x(0.3, 0.4);
    CHECK(std::abs(d1_difference_quotient(sq, x, x) - 2.0 * x) <= 1e-15);
    CHECK(std::abs(d1_difference_quotient(sq, x, x + 1e-13) - (2.0 * x + 1e-13)) <= 1e-12);
    CHECK_THROWS_AS(d1_difference_quotient(parse("z1", 2), x, x), DimensionMismatch);
}

TEST_CASE("one-variable difference quotient of a disk realization", "[ncdiff]") {
    // f(z) = z/2 + ... : a one-variable isometric realization with A = 0
    const double s = 1.0 / std::sqrt(2.0);
    RowVector b(1);
    b << s;
    Vector c(1);
    c << s;
    Matrix d(1, 1);
    d << 0.0;
    const Realization r(polydisk(1).pencil(), 1, 0.0, b, c, d);
    const NcFunction f = r;
    Rng rng(69);
    for (int i = 0; i < 50; ++i) {
        const Complex x = disk_point(rng, 0.9), y = disk_point(rng, 0.9);
        CHECK(std::abs(d1_difference_quotient(f, x, y) - d1_block_difference(f, x, y)) <= 1e-9);
        CHECK(std::abs(d1_difference_quotient(f, x, y) - 0.5) <= 1e-12);
    }
}

TEST_CASE("Gleason split", "[ncdiff]") {
    Rng rng(70);
    const NcFunction prod = parse("z1*z2", 2), ex = example_5_2(), c = FreePolynomial::constant(2, 2.0);
    for (int i = 0; i < 100; ++i) {
        const Complex x1 = disk_point(rng), x2 = disk_point(rng);
        const auto gp = gleason_split(prod, x1, x2);
        CHECK(std::abs(gp.g1) <= 1e-15);
        CHECK(std::abs(gp.g2 - x1) <= 1e-12);
        const auto ge = gleason_split(ex, x1, x2);
        CHECK(std::abs(ge.g1 - 1.0 / (2.0 - x1)) <= 1e-12);
        CHECK(std::abs(ge.g1) <= 1.0);
        const auto gc = gleason_split(c, x1, x2);
        CHECK(gc.g1 == Complex{});
        CHECK(gc.g2 == Complex{});
    }
    CHECK_THROWS_AS(gleason_split(ex, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(gleason_split(parse("z1", 3), 0.1, 0.1), DimensionMismatch);
}

TEST_CASE("Gleason identity holds at random bidisk points", "[ncdiff][property]") {
    Rng rng(71);
    const NcFunction ex = example_5_2();
    for (int i = 0; i < 1000; ++i) {
        const NcFunction f = i % 2 ? ex : NcFunction(random_poly(rng, 2, 0, 3, 5));
        const Complex x1 = i % 97 == 0 ? 0.0 : disk_point(rng), x2 = i % 89 == 0 ? 0.0 : disk_point(rng);
        const auto g = gleason_split(f, x1, x2);
        const Complex lhs = scalar_value(f, {x1, x2});
        const Complex rhs = scalar_value(f, {0.0, 0.0}) + g.g1 * x1 + g.g2 * x2;
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
    // at a zero coordinate the split uses the derivative limit
    const auto g0 = gleason_split(ex, 0.0, 0.0);
    CHECK(std::abs(g0.g1 - 0.5) <= 1e-15);
    CHECK(std::abs(g0.g2 - 0.5) <= 1e-15);
}
