#pragma once

/**
 * @file ncfunction.hpp
 * @brief Type-erased evaluable nc function: a free polynomial, a realization,
 *        a TT remainder factor, or a named composite built from those.
 */

#include "ncball/realize.hpp"

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>

namespace ncball {

/// A matrix-valued nc map given by a closure (column stacks, resolvents, ...).
struct CompositeFunction {
    int dimension;
    std::string name;
    std::function<Matrix(const MatrixTuple&)> evaluate;
};

class NcFunction {
public:
    using Variant = std::variant<FreePolynomial, Realization, RemainderFactor, CompositeFunction>;

    NcFunction(FreePolynomial p) : f_(std::move(p)) {}
    NcFunction(Realization r) : f_(std::move(r)) {}
    NcFunction(RemainderFactor g) : f_(std::move(g)) {}
    NcFunction(CompositeFunction c) : f_(std::move(c)) {}

    static NcFunction composite(int d, std::string name, std::function<Matrix(const MatrixTuple&)> fn) {
        return NcFunction(CompositeFunction{d, std::move(name), std::move(fn)});
    }

    int dimension() const {
        return std::visit(
            [](const auto& g) -> int {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, CompositeFunction>) return g.dimension;
                else return g.dimension();
            },
            f_);
    }

    Matrix operator()(const MatrixTuple& x) const {
        if (x.dimension() != dimension()) throw DimensionMismatch("function and point dimensions differ");
        return std::visit(
            [&](const auto& g) -> Matrix {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, FreePolynomial>) return eval_poly(g, x);
                else if constexpr (std::is_same_v<T, Realization>) return eval(g, x);
                else if constexpr (std::is_same_v<T, RemainderFactor>) return g(x);
                else return g.evaluate(x);
            },
            f_);
    }

    std::string describe() const {
        return std::visit(
            [](const auto& g) -> std::string {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, FreePolynomial>) return "poly(" + format(g) + ")";
                else if constexpr (std::is_same_v<T, Realization>)
                    return std::string("realization(") + to_string(g.mode()) + ")";
                else if constexpr (std::is_same_v<T, RemainderFactor>) return "remainder[" + g.word().to_string() + "]";
                else return g.name;
            },
            f_);
    }

    const Variant& variant() const noexcept { return f_; }

private:
    Variant f_;
};

/// Resolvent-term handle of a realization as an evaluable map (matrix-valued).
inline NcFunction resolvent_function(const Realization& f, std::string name = "resolvent") {
    return NcFunction::composite(f.dimension(), std::move(name),
                                 [f](const MatrixTuple& x) { return resolvent_term(f, x); });
}

}  // namespace ncball
