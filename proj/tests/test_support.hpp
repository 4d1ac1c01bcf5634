#pragma once

// Seeded generators and independent oracles shared by the unit and acceptance suites.
// The oracles deliberately avoid the library code path they check.

#include "ncball/ncball.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <vector>

namespace ncball::testing {

inline Complex random_complex(Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    return {scale * re, scale * g(rng)};
}

/// Small dyadic coefficients so polynomial identities can be compared exactly.
inline Complex dyadic(Rng& rng) {
    std::uniform_int_distribution<int> k(-8, 8);
    int re = k(rng), im = k(rng);
    if (re == 0 && im == 0) re = 1;
    return {re / 4.0, im / 4.0};
}

inline Word random_word(Rng& rng, int d, int size) {
    std::uniform_int_distribution<int> letter(1, d);
    std::vector<int> l;
    for (int i = 0; i < size; ++i) l.push_back(letter(rng));
    return Word(d, std::move(l));
}

/// Random polynomial with word sizes in [min_degree, max_degree].
inline FreePolynomial random_poly(Rng& rng, int d, int min_degree, int max_degree, int terms) {
    std::uniform_int_distribution<int> size(min_degree, max_degree);
    FreePolynomial p(d);
    for (int t = 0; t < terms; ++t) p.add_term(random_word(rng, d, size(rng)), dyadic(rng));
    return p;
}

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double scale = 1.0) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = random_complex(rng, scale);
    return m;
}

inline MatrixTuple random_point(Rng& rng, int n, int d, double scale = 1.0) {
    std::vector<Matrix> mats;
    for (int j = 0; j < d; ++j) mats.push_back(random_matrix(rng, n, n, scale));
    return MatrixTuple(std::move(mats));
}

/// Largest singular value by power iteration on M*M.
inline double power_iteration_norm(const Matrix& m, int iterations = 5000) {
    if (m.size() == 0) return 0.0;
    const Matrix g = m.adjoint() * m;
    Vector v = Vector::Ones(g.cols());
    v(0) += Complex(0.3, 0.1);
    double lambda = 0.0;
    for (int k = 0; k < iterations; ++k) {
        Vector w = g * v;
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
        const double next = std::real(v.dot(g * v));
        if (std::abs(next - lambda) <= 1e-15 * std::max(1.0, next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

/// ‖Q(X)‖ from the largest eigenvalue of Q(X)*Q(X).
inline double eigen_norm(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

/// Q(X) assembled block by block: block (a, b) = Σ_j (Q_j)_{ab} X_j.
inline Matrix block_pencil(const Pencil& q, const MatrixTuple& x) {
    const int n = x.level();
    Matrix out = Matrix::Zero(q.rows() * n, q.cols() * n);
    for (int a = 0; a < q.rows(); ++a)
        for (int b = 0; b < q.cols(); ++b)
            for (int j = 1; j <= q.dimension(); ++j)
                out.block(a * n, b * n, n, n) += q.coefficients()[static_cast<std::size_t>(j - 1)](a, b) * x(j);
    return out;
}

/// Formal Neumann expansion f = A + BΛ Σ_k (DΛ)^k C with Λ = Σ_j (I_m ⊗ Q_j) Z_j,
/// carried out on vectors of free polynomials and truncated at `degree`.
inline FreePolynomial neumann_expansion(const Realization& f, int degree) {
    const int d = f.dimension();
    const int m = f.state_multiplicity();
    const Pencil& q = f.pencil();
    const Eigen::Index sp = static_cast<Eigen::Index>(m) * q.rows(), sq = static_cast<Eigen::Index>(m) * q.cols();
    std::vector<Matrix> lifted;
    for (int j = 0; j < d; ++j) lifted.push_back(kron(Matrix::Identity(m, m), q.coefficients()[static_cast<std::size_t>(j)]));

    auto truncate = [degree](const FreePolynomial& p) {
        FreePolynomial out(p.dimension());
        for (const auto& [w, c] : p.terms())
            if (static_cast<int>(w.size()) <= degree) out.add_term(w, c);
        return out;
    };
    // Λ v: entry a is Σ_j Z_j Σ_b (L_j)_{ab} v_b.
    auto apply_lambda = [&](const std::vector<FreePolynomial>& v) {
        std::vector<FreePolynomial> out(static_cast<std::size_t>(sp), FreePolynomial(d));
        for (Eigen::Index a = 0; a < sp; ++a)
            for (int j = 0; j < d; ++j) {
                FreePolynomial acc(d);
                for (Eigen::Index b = 0; b < sq; ++b)
                    acc = acc + poly_scale(lifted[static_cast<std::size_t>(j)](a, b), v[static_cast<std::size_t>(b)]);
                out[static_cast<std::size_t>(a)] =
                    out[static_cast<std::size_t>(a)] + truncate(FreePolynomial::variable(d, j + 1) * acc);
            }
        return out;
    };
    auto apply_matrix = [&](const Matrix& mat, const std::vector<FreePolynomial>& v) {
        std::vector<FreePolynomial> out(static_cast<std::size_t>(mat.rows()), FreePolynomial(d));
        for (Eigen::Index a = 0; a < mat.rows(); ++a)
            for (Eigen::Index b = 0; b < mat.cols(); ++b)
                out[static_cast<std::size_t>(a)] =
                    out[static_cast<std::size_t>(a)] + poly_scale(mat(a, b), v[static_cast<std::size_t>(b)]);
        return out;
    };

    std::vector<FreePolynomial> resolvent(static_cast<std::size_t>(sq), FreePolynomial(d));
    std::vector<FreePolynomial> term(static_cast<std::size_t>(sq), FreePolynomial(d));
    for (Eigen::Index b = 0; b < sq; ++b) term[static_cast<std::size_t>(b)] = FreePolynomial::constant(d, f.C()(b));
    for (int k = 0; k < degree; ++k) {
        for (Eigen::Index b = 0; b < sq; ++b)
            resolvent[static_cast<std::size_t>(b)] = resolvent[static_cast<std::size_t>(b)] + term[static_cast<std::size_t>(b)];
        term = apply_matrix(f.D(), apply_lambda(term));
    }
    const auto tail = apply_lambda(resolvent);
    FreePolynomial out = FreePolynomial::constant(d, f.A());
    for (Eigen::Index a = 0; a < sp; ++a) out = out + poly_scale(f.B()(a), tail[static_cast<std::size_t>(a)]);
    return truncate(out);
}

inline Complex ex52_closed_form(Complex x1, Complex x2) { return (2.0 * x1 * x2 - x1 - x2) / (x1 + x2 - 2.0); }

/// Uniform point of the disk of the given radius.
inline Complex disk_point(Rng& rng, double radius = 0.999) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::sqrt(u(rng));
    return std::polar(r, 2.0 * 3.14159265358979323846 * u(rng));
}

/// Random unitary (n×n) via QR of a Gaussian matrix.
inline Matrix random_unitary(Rng& rng, int n) {
    Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n, n));
    return qr.householderQ() * Matrix::Identity(n, n);
}

/// Random invertible matrix with controlled conditioning: U diag(s) W with s ∈ [1, spread].
inline Matrix random_invertible(Rng& rng, int n, double spread = 10.0) {
    std::uniform_real_distribution<double> u(1.0, spread);
    Vector s(n);
    for (int i = 0; i < n; ++i) s(i) = u(rng);
    return random_unitary(rng, n) * s.asDiagonal() * random_unitary(rng, n);
}

inline double cond2(const Matrix& s) {
    Eigen::JacobiSVD<Matrix> svd(s);
    const auto& sv = svd.singularValues();
    return sv(0) / sv(sv.size() - 1);
}

}  // namespace ncball::testing
