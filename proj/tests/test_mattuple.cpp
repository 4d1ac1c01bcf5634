#include "test_support.hpp"

#include <catch_amalgamated.hpp>

using namespace ncball;
using namespace ncball::testing;

TEST_CASE("tuple construction validates shapes", "[mattuple]") {
    CHECK_THROWS_AS(MatrixTuple(std::vector<Matrix>{Matrix::Zero(2, 2), Matrix::Zero(3, 3)}), DimensionMismatch);
    CHECK_THROWS_AS(MatrixTuple(std::vector<Matrix>{Matrix::Zero(2, 3)}), DimensionMismatch);
    CHECK_THROWS_AS(MatrixTuple(std::vector<Matrix>{}), DomainError);
    const MatrixTuple z(3, 2);
    CHECK(z.level() == 3);
    CHECK(z.dimension() == 2);
}

TEST_CASE("sup norm examples", "[mattuple]") {
    CHECK(sup_norm(MatrixTuple(4, 3)) == 0.0);
    CHECK(sup_norm(MatrixTuple::scalar({0.8, 0.7})) == Catch::Approx(0.8).margin(1e-15));
    Matrix n(2, 2);
    n << 0.0, 2.0, 0.0, 0.0;
    CHECK(sup_norm(MatrixTuple(std::vector<Matrix>{n, Matrix::Zero(2, 2)})) == Catch::Approx(2.0).margin(1e-14));
}

TEST_CASE("sup norm agrees with power iteration", "[mattuple][property]") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 8;
        const MatrixTuple x = random_point(rng, n, 3);
        double oracle = 0.0;
        for (const auto& m : x.entries()) oracle = std::max(oracle, power_iteration_norm(m, 200000));
        CHECK(std::abs(sup_norm(x) - oracle) <= 1e-8 * std::max(1.0, oracle));
    }
}

TEST_CASE("evaluation examples", "[mattuple]") {
    const auto x = MatrixTuple::scalar({Complex(0.3, 0.2), Complex(-0.5, 0.1)});
    CHECK(op_norm(eval_poly(parse("z1*z2 - z2*z1", 2), x)) <= 1e-16);
    CHECK(std::abs(eval_poly(parse("2*z1*z2 - z1 - z2", 2), MatrixTuple::scalar({0.5, 0.5}))(0, 0) + 0.5) <= 1e-15);
    Rng rng(32);
    const MatrixTuple y = random_point(rng, 3, 2);
    CHECK(eval_word(y, Word(2)) == Matrix::Identity(3, 3));
    CHECK(eval_poly(FreePolynomial::constant(2, 4.0), y) == 4.0 * Matrix::Identity(3, 3));
    CHECK_THROWS_AS(eval_poly(parse("z1", 3), y), DimensionMismatch);
}

TEST_CASE("evaluation is an algebra homomorphism", "[mattuple][property]") {
    Rng rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + trial % 3, n = 1 + trial % 4;
        const auto p = random_poly(rng, d, 0, 3, 5);
        const auto q = random_poly(rng, d, 0, 3, 5);
        const MatrixTuple x = random_point(rng, n, d, 0.6);
        const Matrix prod = eval_poly(p, x) * eval_poly(q, x);
        CHECK(op_norm(eval_poly(p * q, x) - prod) <= 1e-12 * std::max(1.0, op_norm(prod)));
        const Matrix sum = eval_poly(p, x) + eval_poly(q, x);
        CHECK(op_norm(eval_poly(p + q, x) - sum) <= 1e-12 * std::max(1.0, op_norm(sum)));
    }
}

TEST_CASE("word norms are submultiplicative", "[mattuple][property]") {
    Rng rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + trial % 3, n = 1 + trial % 5;
        const MatrixTuple x = random_point(rng, n, d);
        const Word w = random_word(rng, d, 1 + trial % 5);
        double bound = 1.0;
        for (int l : w.letters()) bound *= op_norm(x(l));
        const double lhs = op_norm(eval_word(x, w));
        CHECK(lhs <= bound * (1.0 + 1e-12));
        CHECK(bound <= std::pow(sup_norm(x), static_cast<double>(w.size())) * (1.0 + 1e-12));
    }
}

TEST_CASE("direct sums", "[mattuple]") {
    Rng rng(35);
    const MatrixTuple x = random_point(rng, 2, 2);
    const MatrixTuple padded = direct_sum(x, MatrixTuple(1, 2));
    REQUIRE(padded.level() == 3);
    for (int j = 1; j <= 2; ++j) {
        CHECK(padded(j).topLeftCorner(2, 2) == x(j));
        CHECK(padded(j).row(2).isZero(0.0));
        CHECK(padded(j).col(2).isZero(0.0));
    }
    CHECK_THROWS_AS(direct_sum(x, MatrixTuple(1, 3)), DimensionMismatch);
}

TEST_CASE("evaluation respects direct sums exactly", "[mattuple][property]") {
    Rng rng(36);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + trial % 3;
        const auto p = random_poly(rng, d, 0, 4, 6);
        const MatrixTuple x = random_point(rng, 1 + trial % 4, d);
        const MatrixTuple y = random_point(rng, 1 + (trial / 4) % 4, d);
        const MatrixTuple xy = direct_sum(x, y);
        CHECK(std::abs(sup_norm(xy) - std::max(sup_norm(x), sup_norm(y))) <= 1e-14 * sup_norm(xy));
        CHECK(eval_poly(p, xy) == block_diag(eval_poly(p, x), eval_poly(p, y)));
    }
}

TEST_CASE("similarity action", "[mattuple]") {
    Rng rng(37);
    const MatrixTuple x = random_point(rng, 3, 2);
    const MatrixTuple same = similarity(Matrix::Identity(3, 3), x);
    for (int j = 1; j <= 2; ++j) CHECK(op_norm(same(j) - x(j)) == 0.0);
    const MatrixTuple scaled = similarity(2.0 * Matrix::Identity(3, 3), x);
    for (int j = 1; j <= 2; ++j) CHECK(op_norm(scaled(j) - x(j)) <= 1e-15 * op_norm(x(j)));

    Matrix singular = Matrix::Identity(3, 3);
    singular(2, 2) = 1e-14;
    CHECK_THROWS_AS(similarity(singular, x), IllConditioned);
    CHECK_THROWS_AS(similarity(Matrix::Identity(2, 2), x), DimensionMismatch);
}

TEST_CASE("evaluation respects similarities", "[mattuple][property]") {
    Rng rng(38);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + trial % 3, n = 1 + trial % 4;
        const auto p = random_poly(rng, d, 0, 3, 5);
        const MatrixTuple x = random_point(rng, n, d, 0.5);
        const Matrix s = random_invertible(rng, n, 20.0);
        const Matrix lhs = eval_poly(p, similarity(s, x));
        const Matrix rhs = s.partialPivLu().solve(eval_poly(p, x) * s);
        CHECK(op_norm(lhs - rhs) <= 1e-10 * cond2(s) * std::max(1.0, op_norm(eval_poly(p, x))));
    }
}

TEST_CASE("ampliation", "[mattuple]") {
    Rng rng(39);
    const MatrixTuple x = random_point(rng, 2, 3);
    CHECK(ampliation(x, 1) == x);
    const MatrixTuple x5 = ampliation(x, 5);
    CHECK(x5.level() == 10);
    CHECK(std::abs(sup_norm(x5) - sup_norm(x)) <= 1e-14 * sup_norm(x));
    const auto p = random_poly(rng, 3, 0, 3, 5);
    CHECK(eval_poly(p, ampliation(x, 3)) == kron(Matrix::Identity(3, 3), eval_poly(p, x)));
    CHECK(ampliation(x, 2) == direct_sum(x, x));
}

TEST_CASE("nilpotency at words of size exactly k", "[mattuple]") {
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a(0, 1) = 0.7;
    b(0, 1) = Complex(0.0, -2.0);
    const MatrixTuple upper(std::vector<Matrix>{a, b});
    CHECK(is_nilpotent(upper, 2));
    CHECK_FALSE(is_nilpotent(upper, 1));
    const MatrixTuple eye(std::vector<Matrix>{Matrix::Identity(3, 3), Matrix::Identity(3, 3)});
    for (int k = 1; k <= 4; ++k) CHECK_FALSE(is_nilpotent(eye, k));
    CHECK(is_nilpotent(MatrixTuple(2, 3), 1));
    CHECK_THROWS_AS(is_nilpotent(MatrixTuple(1, 10), 7), BudgetExceeded);

    Rng rng(40);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        std::vector<Matrix> mats;
        for (int j = 0; j < 2; ++j) mats.push_back(random_matrix(rng, n, n).triangularView<Eigen::StrictlyUpper>());
        CHECK(is_nilpotent(MatrixTuple(std::move(mats)), n));
    }
}
