#pragma once

/**
 * @file mattuple.hpp
 * @brief Points of the nc universe: d-tuples of n×n complex matrices, with
 *        polynomial evaluation and the structural operations (direct sums,
 *        similarities, ampliations) nc functions must respect.
 */

#include "ncball/freealg.hpp"

#include <algorithm>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace ncball {

class MatrixTuple {
public:
    /// Zero tuple at level n.
    MatrixTuple(int n, int d) : n_(n), mats_(static_cast<std::size_t>(d), Matrix::Zero(n, n)) {
        if (n < 1 || d < 1) throw DomainError("level and dimension must be positive");
    }

    explicit MatrixTuple(std::vector<Matrix> mats) : mats_(std::move(mats)) {
        if (mats_.empty()) throw DomainError("a matrix tuple needs at least one entry");
        n_ = static_cast<int>(mats_.front().rows());
        if (n_ < 1) throw DomainError("level must be positive");
        for (const auto& m : mats_)
            if (m.rows() != n_ || m.cols() != n_)
                throw DimensionMismatch("tuple entries must all be square of the same size");
    }

    /// Level-1 point from scalars.
    static MatrixTuple scalar(std::span<const Complex> x) {
        std::vector<Matrix> mats;
        for (Complex v : x) mats.push_back(Matrix::Constant(1, 1, v));
        return MatrixTuple(std::move(mats));
    }
    static MatrixTuple scalar(std::initializer_list<Complex> x) {
        return scalar(std::span<const Complex>(x.begin(), x.size()));
    }

    int level() const noexcept { return n_; }
    int dimension() const noexcept { return static_cast<int>(mats_.size()); }
    const std::vector<Matrix>& entries() const noexcept { return mats_; }

    /// 1-based coordinate access, matching the letters of words.
    const Matrix& operator()(int j) const { return mats_.at(static_cast<std::size_t>(j - 1)); }
    Matrix& operator()(int j) { return mats_.at(static_cast<std::size_t>(j - 1)); }

    MatrixTuple scaled(Complex t) const {
        MatrixTuple out = *this;
        for (auto& m : out.mats_) m *= t;
        return out;
    }

    friend bool operator==(const MatrixTuple& a, const MatrixTuple& b) {
        if (a.n_ != b.n_ || a.mats_.size() != b.mats_.size()) return false;
        for (std::size_t j = 0; j < a.mats_.size(); ++j)
            if (a.mats_[j] != b.mats_[j]) return false;
        return true;
    }

private:
    int n_ = 0;
    std::vector<Matrix> mats_;
};

/// ‖X‖_∞ = max_j ‖X_j‖ (largest singular value).
inline double sup_norm(const MatrixTuple& x) {
    double best = 0.0;
    for (const auto& m : x.entries()) best = std::max(best, op_norm(m));
    return best;
}

/// X^w = X_{w1} ⋯ X_{wk}; the unit word gives I_n.
inline Matrix eval_word(const MatrixTuple& x, const Word& w) {
    if (w.dimension() != x.dimension()) throw DimensionMismatch("word and tuple dimensions differ");
    Matrix out = Matrix::Identity(x.level(), x.level());
    for (int l : w.letters()) out = ordered_product(out, x(l));
    return out;
}

/// Σ c_w X^w. Prefix products are shared along the length-lex term order.
inline Matrix eval_poly(const FreePolynomial& p, const MatrixTuple& x) {
    if (p.dimension() != x.dimension())
        throw DimensionMismatch("polynomial in " + std::to_string(p.dimension()) +
                                " variables evaluated at a " + std::to_string(x.dimension()) + "-tuple");
    const Eigen::Index n = x.level();
    Matrix out = Matrix::Zero(n, n);
    std::map<Word, Matrix> cache;
    cache.emplace(Word(p.dimension()), Matrix::Identity(n, n));
    std::function<const Matrix&(const Word&)> power = [&](const Word& w) -> const Matrix& {
        if (auto it = cache.find(w); it != cache.end()) return it->second;
        const Matrix& head = power(w.prefix(w.size() - 1));
        Matrix value = ordered_product(head, x(w[w.size() - 1]));
        return cache.emplace(w, std::move(value)).first->second;
    };
    for (const auto& [w, c] : p.terms()) out += c * power(w);
    return out;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

/// X ⊕ Y at level n + m.
inline MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
    if (x.dimension() != y.dimension()) throw DimensionMismatch("direct sum of tuples of different dimension");
    std::vector<Matrix> mats;
    for (int j = 1; j <= x.dimension(); ++j) mats.push_back(block_diag(x(j), y(j)));
    return MatrixTuple(std::move(mats));
}

/// m-fold direct sum X ⊕ ⋯ ⊕ X.
inline MatrixTuple ampliation(const MatrixTuple& x, int m) {
    if (m < 1) throw DomainError("ampliation multiplicity must be positive");
    std::vector<Matrix> mats;
    const Matrix eye = Matrix::Identity(m, m);
    for (const auto& xj : x.entries()) mats.push_back(kron(eye, xj));
    return MatrixTuple(std::move(mats));
}

/// Reciprocal-condition-based estimate of cond_1(S) from a pivoted LU.
inline double condition_estimate(const Eigen::PartialPivLU<Matrix>& lu) {
    const double rc = lu.rcond();
    return rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
}

/// S·X = (S⁻¹X_1S, …, S⁻¹X_dS), solved through a pivoted LU of S.
inline MatrixTuple similarity(const Matrix& s, const MatrixTuple& x) {
    if (s.rows() != x.level() || s.cols() != x.level())
        throw DimensionMismatch("similarity matrix size differs from tuple level");
    Eigen::PartialPivLU<Matrix> lu(s);
    const double cond = condition_estimate(lu);
    if (!(cond <= kMaxCondition)) throw IllConditioned("similarity matrix is numerically singular", cond);
    std::vector<Matrix> mats;
    for (const auto& xj : x.entries()) mats.push_back(lu.solve(xj * s));
    return MatrixTuple(std::move(mats));
}

/// True iff ‖X^w‖ ≤ tol for every word of size exactly k.
inline bool is_nilpotent(const MatrixTuple& x, int k, double tol = kDefaultNormTol) {
    if (k < 1) throw DomainError("nilpotency order must be positive");
    for (const Word& w : words_of_size(x.dimension(), k))
        if (op_norm(eval_word(x, w)) > tol) return false;
    return true;
}

}  // namespace ncball
