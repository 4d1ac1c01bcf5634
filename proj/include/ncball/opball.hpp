#pragma once

/**
 * @file opball.hpp
 * @brief Linear pencils Q(Z) = Σ Q_j Z_j and the nc operator balls
 *        {X : ‖Q(X)‖ < 1}, with membership and matrix-convexity operations.
 *
 * Kronecker convention: Q(X) = Σ_j Q_j ⊗ X_j, so the n×n block (a, b) of
 * Q(X) is Σ_j (Q_j)_{ab} X_j. The realization code relies on the same layout.
 */

#include "ncball/mattuple.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ncball {

class Pencil {
public:
    /// Validates shapes and linear independence of the coefficients.
    explicit Pencil(std::vector<Matrix> coefficients) : coeffs_(std::move(coefficients)) {
        if (coeffs_.empty()) throw DomainError("a pencil needs at least one coefficient");
        p_ = static_cast<int>(coeffs_.front().rows());
        q_ = static_cast<int>(coeffs_.front().cols());
        if (p_ < 1 || q_ < 1) throw DomainError("pencil coefficients must be nonempty");
        for (const auto& c : coeffs_)
            if (c.rows() != p_ || c.cols() != q_)
                throw DimensionMismatch("pencil coefficients must share one shape");
        check_independent();
    }

    int dimension() const noexcept { return static_cast<int>(coeffs_.size()); }
    int rows() const noexcept { return p_; }
    int cols() const noexcept { return q_; }
    const std::vector<Matrix>& coefficients() const noexcept { return coeffs_; }
    const Matrix& operator()(int j) const { return coeffs_.at(static_cast<std::size_t>(j - 1)); }

    friend bool operator==(const Pencil& a, const Pencil& b) {
        if (a.coeffs_.size() != b.coeffs_.size()) return false;
        for (std::size_t j = 0; j < a.coeffs_.size(); ++j)
            if (a.coeffs_[j].rows() != b.coeffs_[j].rows() || a.coeffs_[j].cols() != b.coeffs_[j].cols() ||
                a.coeffs_[j] != b.coeffs_[j])
                return false;
        return true;
    }

private:
    void check_independent() const {
        const Eigen::Index d = dimension();
        Matrix flat(d, static_cast<Eigen::Index>(p_) * q_);
        for (Eigen::Index j = 0; j < d; ++j)
            for (int a = 0; a < p_; ++a)
                for (int b = 0; b < q_; ++b) flat(j, a * q_ + b) = coeffs_[static_cast<std::size_t>(j)](a, b);
        Eigen::JacobiSVD<Matrix> svd(flat);
        const auto& s = svd.singularValues();
        if (s(0) == 0.0 || s(s.size() - 1) <= 1e-10 * s(0) || s.size() < d)
            throw DomainError("pencil coefficients are linearly dependent");
    }

    std::vector<Matrix> coeffs_;
    int p_ = 0;
    int q_ = 0;
};

/// Q(X) = Σ_j Q_j ⊗ X_j, of size (p·n)×(q·n).
inline Matrix pencil_eval(const Pencil& q, const MatrixTuple& x) {
    if (q.dimension() != x.dimension())
        throw DimensionMismatch("pencil in " + std::to_string(q.dimension()) + " variables applied to a " +
                                std::to_string(x.dimension()) + "-tuple");
    const Eigen::Index n = x.level();
    Matrix out = Matrix::Zero(q.rows() * n, q.cols() * n);
    for (int j = 1; j <= q.dimension(); ++j) {
        const Matrix& c = q(j);
        for (Eigen::Index a = 0; a < c.rows(); ++a)
            for (Eigen::Index b = 0; b < c.cols(); ++b)
                if (c(a, b) != Complex{}) out.block(a * n, b * n, n, n) += c(a, b) * x(j);
    }
    return out;
}

struct Membership {
    enum class Kind { Inside, Boundary, Outside };

    Kind kind;
    /// Inside: 1 - s. Boundary: the tolerance used. Outside: s - 1.
    double value;
    /// s = ‖Q(X)‖.
    double norm;

    bool inside() const noexcept { return kind == Kind::Inside; }
};

inline const char* to_string(Membership::Kind k) {
    switch (k) {
        case Membership::Kind::Inside: return "Inside";
        case Membership::Kind::Boundary: return "Boundary";
        case Membership::Kind::Outside: return "Outside";
    }
    return "?";
}

inline Membership classify_norm(double s, double tol) {
    if (s < 1.0 - tol) return {Membership::Kind::Inside, 1.0 - s, s};
    if (std::abs(s - 1.0) <= tol) return {Membership::Kind::Boundary, tol, s};
    return {Membership::Kind::Outside, s - 1.0, s};
}

class OperatorBall {
public:
    explicit OperatorBall(Pencil pencil, std::string name = "pencil")
        : pencil_(std::move(pencil)), name_(std::move(name)) {}

    const Pencil& pencil() const noexcept { return pencil_; }
    int dimension() const noexcept { return pencil_.dimension(); }
    const std::string& name() const noexcept { return name_; }

    /// ‖Q(X)‖.
    double norm(const MatrixTuple& x) const { return op_norm(pencil_eval(pencil_, x)); }

    Membership membership(const MatrixTuple& x, double tol = 1e-9) const {
        return classify_norm(norm(x), tol);
    }

private:
    Pencil pencil_;
    std::string name_;
};

inline Membership membership(const OperatorBall& ball, const MatrixTuple& x, double tol = 1e-9) {
    return ball.membership(x, tol);
}

/// Row ball: Q(Z) = [Z_1 ⋯ Z_d].
inline OperatorBall row_ball(int d) {
    if (d < 1) throw DomainError("ball dimension must be positive");
    std::vector<Matrix> c;
    for (int j = 0; j < d; ++j) {
        Matrix e = Matrix::Zero(1, d);
        e(0, j) = 1.0;
        c.push_back(std::move(e));
    }
    return OperatorBall(Pencil(std::move(c)), "row:" + std::to_string(d));
}

/// Polydisk: Q(Z) = diag(Z_1, …, Z_d).
inline OperatorBall polydisk(int d) {
    if (d < 1) throw DomainError("ball dimension must be positive");
    std::vector<Matrix> c;
    for (int j = 0; j < d; ++j) {
        Matrix e = Matrix::Zero(d, d);
        e(j, j) = 1.0;
        c.push_back(std::move(e));
    }
    return OperatorBall(Pencil(std::move(c)), "polydisk:" + std::to_string(d));
}

/// Vector state φ_v(X) = (⟨X_1v, v⟩, …, ⟨X_dv, v⟩) for a unit vector v.
inline MatrixTuple state_compression(const MatrixTuple& x, const Vector& v) {
    if (v.size() != x.level()) throw DimensionMismatch("state vector length differs from tuple level");
    if (std::abs(v.norm() - 1.0) > 1e-12) throw DomainError("state vector is not a unit vector");
    std::vector<Complex> out;
    for (const auto& xj : x.entries()) out.push_back(v.dot(xj * v));  // dot conjugates its left side
    return MatrixTuple::scalar(out);
}

/// Compression V*XV by an isometry V: C^k -> C^n.
inline MatrixTuple ucp_compression(const MatrixTuple& x, const Matrix& v) {
    if (v.rows() != x.level()) throw DimensionMismatch("isometry rows differ from tuple level");
    const Matrix defect = v.adjoint() * v - Matrix::Identity(v.cols(), v.cols());
    if (op_norm(defect) > 1e-10) throw DomainError("compression matrix is not an isometry");
    std::vector<Matrix> mats;
    for (const auto& xj : x.entries()) mats.push_back(v.adjoint() * xj * v);
    return MatrixTuple(std::move(mats));
}

/// Checks ‖X‖_∞ < 2r for in-ball samples, given r bounds the level-1 samples.
inline bool factor_two_check(const OperatorBall& ball, std::span<const MatrixTuple> samples, double r) {
    if (!(r > 0.0)) throw DomainError("radius must be positive");
    for (const auto& x : samples) {
        if (!ball.membership(x).inside()) throw DomainError("factor-two sample lies outside the ball");
        if (x.level() == 1)
            for (const auto& xj : x.entries())
                if (std::abs(xj(0, 0)) > r) throw DomainError("radius does not bound the level-1 samples");
    }
    for (const auto& x : samples)
        if (!(sup_norm(x) < 2.0 * r)) return false;
    return true;
}

}  // namespace ncball
