#pragma once

/**
 * @file realize.hpp
 * @brief Fornasini–Marchesini realizations over a pencil Q:
 *
 *     f(X) = A⊗I_n + (B⊗I_n) Λ(X) [1 − (D⊗I_n) Λ(X)]⁻¹ (C⊗I_n),
 *     Λ(X) = I_m ⊗ Q(X).
 *
 * With Q_j of shape p×q, the state splits as ℂ^m ⊗ ℂ^p on the B side and
 * ℂ^m ⊗ ℂ^q on the C side: B is 1×(m·p), C is (m·q)×1, D is (m·q)×(m·p).
 * For p = q this is the usual square system matrix V = [[A, B], [C, D]].
 *
 * Resolvents are always computed by a pivoted LU solve with a condition
 * check, never by summing the Neumann series.
 */

#include "ncball/opball.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace ncball {

enum class RealizationMode { Contraction, Isometry };

inline const char* to_string(RealizationMode m) {
    return m == RealizationMode::Isometry ? "isometry" : "contraction";
}

class Realization {
public:
    static constexpr double kTol = 1e-10;

    Realization(Pencil pencil, int m, Complex a, RowVector b, Vector c, Matrix d,
                RealizationMode mode = RealizationMode::Contraction)
        : pencil_(std::move(pencil)), m_(m), a_(a), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)),
          mode_(mode) {
        validate();
    }

    const Pencil& pencil() const noexcept { return pencil_; }
    int dimension() const noexcept { return pencil_.dimension(); }
    int state_multiplicity() const noexcept { return m_; }
    Complex A() const noexcept { return a_; }
    const RowVector& B() const noexcept { return b_; }
    const Vector& C() const noexcept { return c_; }
    const Matrix& D() const noexcept { return d_; }
    RealizationMode mode() const noexcept { return mode_; }

    /// ‖V*V − I‖ for the system matrix V = [[A, B], [C, D]].
    double isometry_defect() const {
        const Matrix v = system_matrix();
        return op_norm(v.adjoint() * v - Matrix::Identity(v.cols(), v.cols()));
    }

    Matrix system_matrix() const {
        const Eigen::Index sp = b_.size(), sq = c_.size();
        Matrix v(1 + sq, 1 + sp);
        v(0, 0) = a_;
        v.block(0, 1, 1, sp) = b_;
        v.block(1, 0, sq, 1) = c_;
        v.block(1, 1, sq, sp) = d_;
        return v;
    }

    /// L_j = I_m ⊗ Q_j, shape (m·p)×(m·q).
    Matrix lifted_coefficient(int j) const {
        return kron(Matrix::Identity(m_, m_), pencil_(j));
    }

private:
    void validate() const {
        if (m_ < 1) throw DomainError("state multiplicity m must be positive");
        const Eigen::Index sp = static_cast<Eigen::Index>(m_) * pencil_.rows();
        const Eigen::Index sq = static_cast<Eigen::Index>(m_) * pencil_.cols();
        if (b_.size() != sp) throw DimensionMismatch("B must have length m*p = " + std::to_string(sp));
        if (c_.size() != sq) throw DimensionMismatch("C must have length m*q = " + std::to_string(sq));
        if (d_.rows() != sq || d_.cols() != sp)
            throw DimensionMismatch("D must be (m*q)x(m*p) = " + std::to_string(sq) + "x" + std::to_string(sp));
        const double dn = op_norm(d_);
        if (dn > 1.0 + kTol) throw DomainError("||D|| = " + format_double(dn) + " exceeds 1");
        if (mode_ == RealizationMode::Isometry) {
            const double defect = isometry_defect();
            if (defect > kTol)
                throw DomainError("system matrix is not an isometry (defect " + format_double(defect) + ")");
        }
    }

    Pencil pencil_;
    int m_;
    Complex a_;
    RowVector b_;
    Vector c_;
    Matrix d_;
    RealizationMode mode_;
};

inline Realization make_realization(Pencil pencil, int m, Complex a, RowVector b, Vector c, Matrix d,
                                    RealizationMode mode) {
    return Realization(std::move(pencil), m, a, std::move(b), std::move(c), std::move(d), mode);
}

/// The bidisk example: m = 1, Q = diag(Z1, Z2), A = 0, B = C^T = (1/√2)(1, 1),
/// D = [[1/2, −1/2], [−1/2, 1/2]]; V is a 3×3 unitary and on scalars
/// f(x) = (2x₁x₂ − x₁ − x₂)/(x₁ + x₂ − 2).
inline Realization example_5_2() {
    const double s = 1.0 / std::sqrt(2.0);
    RowVector b(2);
    b << s, s;
    Vector c(2);
    c << s, s;
    Matrix d(2, 2);
    d << 0.5, -0.5, -0.5, 0.5;
    return make_realization(polydisk(2).pencil(), 1, 0.0, std::move(b), std::move(c), std::move(d),
                            RealizationMode::Isometry);
}

namespace detail {

struct ResolventParts {
    Matrix lambda;     // I_m ⊗ Q(X)
    Matrix resolvent;  // [1 − (D⊗I)Λ]⁻¹ (C⊗I)
};

inline ResolventParts resolve(const Realization& f, const MatrixTuple& x) {
    const Eigen::Index n = x.level();
    const int m = f.state_multiplicity();
    Matrix lambda = kron(Matrix::Identity(m, m), pencil_eval(f.pencil(), x));
    const Matrix dl = ordered_product(kron_identity(f.D(), n), lambda);
    const Matrix op = Matrix::Identity(dl.rows(), dl.cols()) - dl;
    Eigen::PartialPivLU<Matrix> lu(op);
    const double cond = condition_estimate(lu);
    if (!(cond <= kMaxCondition))
        throw IllConditioned("resolvent operand is ill-conditioned near the boundary", cond);
    Matrix r = ordered_solve(op, kron_identity(f.C(), n));
    return {std::move(lambda), std::move(r)};
}

}  // namespace detail

/// [1 − (D⊗I_n)(I_m⊗Q(X))]⁻¹ (C⊗I_n), shape (m·q·n)×n.
inline Matrix resolvent_term(const Realization& f, const MatrixTuple& x) {
    return detail::resolve(f, x).resolvent;
}

inline Matrix eval(const Realization& f, const MatrixTuple& x) {
    const Eigen::Index n = x.level();
    auto parts = detail::resolve(f, x);
    Matrix out = ordered_product(ordered_product(kron_identity(RowVector(f.B()), n), parts.lambda), parts.resolvent);
    out.diagonal().array() += f.A();
    return out;
}

/// B L_{w1} D L_{w2} D ⋯ D L_{wk}, shape 1×(m·q). Empty for the unit word.
inline RowVector coefficient_row(const Realization& f, const Word& w) {
    if (w.dimension() != f.dimension()) throw DimensionMismatch("word and realization dimensions differ");
    if (w.empty()) throw DomainError("coefficient row needs a nonempty word");
    RowVector row = f.B();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) row = row * f.D();
        row = row * f.lifted_coefficient(w[i]);
    }
    return row;
}

/// c_∅ = A; c_w = B L_{w1} D ⋯ D L_{wk} C.
inline Complex power_series_coefficient(const Realization& f, const Word& w) {
    if (w.dimension() != f.dimension()) throw DimensionMismatch("word and realization dimensions differ");
    if (w.empty()) return f.A();
    return (coefficient_row(f, w) * f.C())(0, 0);
}

/// Truncated power series Σ_{|w| ≤ degree} c_w Z^w.
inline FreePolynomial truncated_series(const Realization& f, int degree) {
    FreePolynomial out(f.dimension());
    for (const Word& w : words_below(f.dimension(), degree + 1))
        out.add_term(w, power_series_coefficient(f, w));
    return out;
}

/// g_w(X) = (B L_{w1} D ⋯ D L_{wN} ⊗ I_n) · resolvent_term(X), the TT remainder factor
/// multiplying X^w from the right.
class RemainderFactor {
public:
    RemainderFactor(Realization f, Word w) : f_(std::move(f)), w_(std::move(w)), row_(coefficient_row(f_, w_)) {}

    const Realization& realization() const noexcept { return f_; }
    const Word& word() const noexcept { return w_; }
    int dimension() const noexcept { return f_.dimension(); }

    Matrix operator()(const MatrixTuple& x) const {
        return ordered_product(kron_identity(Matrix(row_), x.level()), resolvent_term(f_, x));
    }

private:
    Realization f_;
    Word w_;
    RowVector row_;
};

inline RemainderFactor remainder_factor(const Realization& f, const Word& w) {
    if (w.empty()) throw DomainError("remainder factors are indexed by nonempty words");
    return RemainderFactor(f, w);
}

/// Homogeneous parts f_0(X), …, f_{K−1}(X) of the realization at X, each n×n.
inline std::vector<Matrix> homogeneous_values(const Realization& f, const MatrixTuple& x, int count) {
    const Eigen::Index n = x.level();
    const int m = f.state_multiplicity();
    std::vector<Matrix> out;
    if (count <= 0) return out;
    out.push_back(f.A() * Matrix::Identity(n, n));
    const Matrix lambda = kron(Matrix::Identity(m, m), pencil_eval(f.pencil(), x));
    const Matrix dl = kron_identity(f.D(), n) * lambda;
    const Matrix bl = kron_identity(RowVector(f.B()), n) * lambda;
    Matrix tail = kron_identity(f.C(), n);  // (DΛ)^{k−1} C
    for (int k = 1; k < count; ++k) {
        out.push_back(bl * tail);
        tail = dl * tail;
    }
    return out;
}

/// Σ_N(f)(X) = Σ_{k<N} (1 − k/N) f_k(X), evaluated without enumerating words.
inline Matrix cesaro_value(const Realization& f, const MatrixTuple& x, int N) {
    if (N < 1) throw DomainError("Cesaro order must be positive");
    const auto parts = homogeneous_values(f, x, N);
    Matrix out = Matrix::Zero(x.level(), x.level());
    for (int k = 0; k < N; ++k) out += (1.0 - static_cast<double>(k) / N) * parts[static_cast<std::size_t>(k)];
    return out;
}

/// Plain partial sum Σ_{k<N} f_k(X).
inline Matrix partial_sum_value(const Realization& f, const MatrixTuple& x, int N) {
    const auto parts = homogeneous_values(f, x, N);
    Matrix out = Matrix::Zero(x.level(), x.level());
    for (const auto& p : parts) out += p;
    return out;
}

}  // namespace ncball
