#pragma once

/**
 * @file core.hpp
 * @brief Scalar/matrix aliases, error types and small numeric helpers shared
 *        by every ncball module.
 */

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncball {

inline constexpr const char* kVersion = "0.1.0";

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;

/// Base of all library errors. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A documented precondition on the inputs does not hold.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Enumeration or sampling budget exceeded.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Linear solve refused because the operand is (numerically) singular.
class IllConditioned : public Error {
public:
    IllConditioned(const std::string& what, double condition)
        : Error(what + " (condition estimate " + std::to_string(condition) + ")"),
          condition_(condition) {}

    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

/// Syntax errors carry the 0-based character offset into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

inline constexpr double kDefaultNormTol = 1e-10;
inline constexpr double kMaxCondition = 1e12;

/// Operator (spectral) norm: largest singular value.
inline double op_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() <= 64 && m.cols() <= 64) {
        Eigen::JacobiSVD<Matrix> svd(m);
        return svd.singularValues()(0);
    }
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

/// Kronecker product a ⊗ b, block (i,j) = a(i,j)·b.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// a ⊗ I_n without materializing the identity.
inline Matrix kron_identity(const Matrix& a, Eigen::Index n) {
    Matrix out = Matrix::Zero(a.rows() * n, a.cols() * n);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != Complex{})
                for (Eigen::Index k = 0; k < n; ++k) out(i * n + k, j * n + k) = a(i, j);
    return out;
}

/// a·b with a fixed left-to-right summation order, independent of the matrix size.
/// Evaluation at X ⊕ Y then equals the block-diagonal assembly bit for bit, because
/// the zero blocks only contribute exact zeros.
inline Matrix ordered_product(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
    Matrix out(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            double re = 0.0, im = 0.0;
            for (Eigen::Index k = 0; k < a.cols(); ++k) {
                const Complex x = a(i, k), y = b(k, j);
                re += x.real() * y.real() - x.imag() * y.imag();
                im += x.real() * y.imag() + x.imag() * y.real();
            }
            out(i, j) = Complex(re, im);
        }
    return out;
}

/// Solves a·x = b by unblocked Gaussian elimination with partial pivoting (first
/// maximal pivot). Like ordered_product, the result at a permuted block-diagonal a
/// matches the blockwise solves exactly. Callers check conditioning separately.
inline Matrix ordered_solve(Matrix a, Matrix b) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || b.rows() != n) throw DimensionMismatch("linear solve shape mismatch");
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        double best = std::norm(a(c, c));
        for (Eigen::Index r = c + 1; r < n; ++r)
            if (const double v = std::norm(a(r, c)); v > best) {
                best = v;
                p = r;
            }
        if (best == 0.0) throw IllConditioned("linear solve hit an exactly singular pivot", HUGE_VAL);
        if (p != c) {
            a.row(c).swap(a.row(p));
            b.row(c).swap(b.row(p));
        }
        for (Eigen::Index r = c + 1; r < n; ++r) {
            if (a(r, c) == Complex{}) continue;
            const Complex l = a(r, c) / a(c, c);
            for (Eigen::Index j = c + 1; j < n; ++j) a(r, j) -= l * a(c, j);
            for (Eigen::Index j = 0; j < b.cols(); ++j) b(r, j) -= l * b(c, j);
        }
    }
    for (Eigen::Index r = n - 1; r >= 0; --r)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            Complex acc = b(r, j);
            for (Eigen::Index k = r + 1; k < n; ++k) acc -= a(r, k) * b(k, j);
            b(r, j) = acc / a(r, r);
        }
    return b;
}

/// Shortest-safe lossless decimal rendering of a double (17 significant digits).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace ncball
