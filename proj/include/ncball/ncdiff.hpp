#pragma once

/**
 * @file ncdiff.hpp
 * @brief First-order nc difference-differential calculus by block upper
 *        triangular evaluation, Taylor–Taylor identity checks, the one-variable
 *        difference quotient, and the Gleason split on the bidisk.
 *
 * For scalar-valued f, evaluating at X_j = [[0, h_j], [0, x_j]] gives
 *
 *     f(X) = [[f(0), Δf(0, x)[h]], [0, f(x)]],
 *
 * so Δf(0, x)[h] is read off the (1, 2) entry.
 */

#include "ncball/ncfunction.hpp"

#include <span>
#include <utility>
#include <vector>

namespace ncball {

namespace detail {

inline Complex upper_right(const NcFunction& f, const MatrixTuple& block_point) {
    const Matrix v = f(block_point);
    if (v.rows() != 2 || v.cols() != 2) throw DomainError("difference calculus needs a scalar-valued function");
    return v(0, 1);
}

// X_j = [[top_j, h_j], [0, bottom_j]].
inline MatrixTuple upper_triangular_point(std::span<const Complex> top, std::span<const Complex> bottom,
                                          std::span<const Complex> h) {
    std::vector<Matrix> mats;
    for (std::size_t j = 0; j < h.size(); ++j) {
        Matrix m(2, 2);
        m << top[j], h[j], 0.0, bottom[j];
        mats.push_back(std::move(m));
    }
    return MatrixTuple(std::move(mats));
}

}  // namespace detail

/// Δf(0, x)[h]: the (1, 2) entry of f at the level-2 point [[0, h], [0, x]].
inline Complex delta_first(const NcFunction& f, std::span<const Complex> x, std::span<const Complex> h) {
    const auto d = static_cast<std::size_t>(f.dimension());
    if (x.size() != d || h.size() != d) throw DimensionMismatch("base point and direction need d coordinates");
    const std::vector<Complex> zero(d, Complex{});
    return detail::upper_right(f, detail::upper_triangular_point(zero, x, h));
}

inline Complex delta_first(const NcFunction& f, std::initializer_list<Complex> x, std::initializer_list<Complex> h) {
    return delta_first(f, std::span<const Complex>(x.begin(), x.size()), std::span<const Complex>(h.begin(), h.size()));
}

/// Δ_j f(0, x) = delta_first in the coordinate direction e_j (1-based j).
inline Complex delta_coordinate(const NcFunction& f, std::span<const Complex> x, int j) {
    std::vector<Complex> h(static_cast<std::size_t>(f.dimension()), Complex{});
    h.at(static_cast<std::size_t>(j - 1)) = 1.0;
    return delta_first(f, x, h);
}

struct TTReport {
    Matrix lhs;
    Matrix rhs;
    double defect = 0.0;
    bool passed = false;
};

inline constexpr std::uint64_t kTTWordBudget = 100'000;

/// Checks f(X) = Σ_{|v|<N} c_v X^v + Σ_{|w|=N} X^w g_w(X) for a realization.
inline TTReport tt_check(const Realization& f, const MatrixTuple& x, int N, double tol = 1e-9) {
    if (N < 1) throw DomainError("TT order must be positive");
    const auto top = words_of_size(f.dimension(), N, kTTWordBudget);
    TTReport report;
    report.lhs = eval(f, x);
    Matrix rhs = Matrix::Zero(x.level(), x.level());
    for (const Word& v : words_below(f.dimension(), N, kTTWordBudget))
        rhs += power_series_coefficient(f, v) * eval_word(x, v);
    const Matrix res = resolvent_term(f, x);
    for (const Word& w : top) {
        const Matrix g = kron_identity(Matrix(coefficient_row(f, w)), x.level()) * res;
        rhs += eval_word(x, w) * g;
    }
    report.rhs = std::move(rhs);
    report.defect = op_norm(report.lhs - report.rhs);
    report.passed = report.defect <= tol;
    return report;
}

/// Polynomial version: the remainder factors are the left-division quotients
/// of the part of P of degree ≥ N (zero once N exceeds the degree).
inline TTReport tt_check(const FreePolynomial& p, const MatrixTuple& x, int N, double tol = 1e-9) {
    if (N < 1) throw DomainError("TT order must be positive");
    if (word_count(p.dimension(), N) > kTTWordBudget) throw BudgetExceeded("TT check word budget exceeded");
    FreePolynomial low(p.dimension()), high(p.dimension());
    for (const auto& [w, c] : p.terms()) (static_cast<int>(w.size()) < N ? low : high).add_term(w, c);
    TTReport report;
    report.lhs = eval_poly(p, x);
    Matrix rhs = eval_poly(low, x);
    for (const auto& [w, q] : left_divide(high, N))
        if (!q.is_zero()) rhs += eval_word(x, w) * eval_poly(q, x);
    report.rhs = std::move(rhs);
    report.defect = op_norm(report.lhs - report.rhs);
    report.passed = report.defect <= tol;
    return report;
}

inline constexpr double kCoincidentSeparation = 1e-12;

/// (1, 2) entry of f([[x, 1], [0, y]]).
inline Complex d1_block_difference(const NcFunction& f, Complex x, Complex y) {
    if (f.dimension() != 1) throw DimensionMismatch("difference quotient needs a one-variable function");
    const Complex one = 1.0;
    return detail::upper_right(f, detail::upper_triangular_point({&x, 1}, {&y, 1}, {&one, 1}));
}

/// Δf(x, y) = (f(x) − f(y))/(x − y) for d = 1; below 1e-12 separation the
/// (1, 2) entry of f([[x, 1], [0, y]]) is used instead.
inline Complex d1_difference_quotient(const NcFunction& f, Complex x, Complex y) {
    if (f.dimension() != 1) throw DimensionMismatch("difference quotient needs a one-variable function");
    if (std::abs(x - y) > kCoincidentSeparation) {
        const Matrix fx = f(MatrixTuple::scalar({x}));
        const Matrix fy = f(MatrixTuple::scalar({y}));
        if (fx.size() != 1) throw DomainError("difference quotient needs a scalar-valued function");
        return (fx(0, 0) - fy(0, 0)) / (x - y);
    }
    return d1_block_difference(f, x, y);
}

struct GleasonSplit {
    Complex g1;
    Complex g2;
};

/// g1(x) = (f(x1, 0) − f(0, 0))/x1, g2(x) = (f(x1, x2) − f(x1, 0))/x2 on the bidisk.
/// Coordinates below 1e-12 in modulus use the block (derivative) limit.
inline GleasonSplit gleason_split(const NcFunction& f, Complex x1, Complex x2) {
    if (f.dimension() != 2) throw DimensionMismatch("the Gleason split is defined on the bidisk");
    if (!(std::abs(x1) < 1.0 && std::abs(x2) < 1.0)) throw DomainError("Gleason split point outside the bidisk");
    auto value = [&](Complex a, Complex b) {
        const Matrix v = f(MatrixTuple::scalar({a, b}));
        if (v.size() != 1) throw DomainError("Gleason split needs a scalar-valued function");
        return v(0, 0);
    };
    GleasonSplit out;
    if (std::abs(x1) >= kCoincidentSeparation) {
        out.g1 = (value(x1, 0.0) - value(0.0, 0.0)) / x1;
    } else {
        const Complex top[] = {x1, 0.0}, bottom[] = {0.0, 0.0}, h[] = {1.0, 0.0};
        out.g1 = detail::upper_right(f, detail::upper_triangular_point(top, bottom, h));
    }
    if (std::abs(x2) >= kCoincidentSeparation) {
        out.g2 = (value(x1, x2) - value(x1, 0.0)) / x2;
    } else {
        const Complex top[] = {x1, x2}, bottom[] = {x1, 0.0}, h[] = {0.0, 1.0};
        out.g2 = detail::upper_right(f, detail::upper_triangular_point(top, bottom, h));
    }
    return out;
}

}  // namespace ncball
