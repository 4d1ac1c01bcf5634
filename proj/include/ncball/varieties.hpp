#pragma once

/**
 * @file varieties.hpp
 * @brief Algebraic nc subvarieties {X ∈ 𝔻_Q : P(X) = 0 for all generators P}.
 */

#include "ncball/probe.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ncball {

class AlgebraicVariety {
public:
    AlgebraicVariety(OperatorBall ambient, std::vector<FreePolynomial> generators)
        : ambient_(std::move(ambient)), generators_(std::move(generators)) {
        for (const auto& g : generators_)
            if (g.dimension() != ambient_.dimension())
                throw DimensionMismatch("generator dimension differs from the ambient ball");
    }

    const OperatorBall& ambient() const noexcept { return ambient_; }
    const std::vector<FreePolynomial>& generators() const noexcept { return generators_; }
    int dimension() const noexcept { return ambient_.dimension(); }

private:
    OperatorBall ambient_;
    std::vector<FreePolynomial> generators_;
};

/// Largest generator residual max_P ‖P(X)‖.
inline double variety_residual(const AlgebraicVariety& v, const MatrixTuple& x) {
    if (x.dimension() != v.dimension()) throw DimensionMismatch("point and variety dimensions differ");
    double worst = 0.0;
    for (const auto& g : v.generators()) worst = std::max(worst, op_norm(eval_poly(g, x)));
    return worst;
}

/// Inside the ambient ball and every generator vanishes to within tol.
inline bool variety_membership(const AlgebraicVariety& v, const MatrixTuple& x, double tol = 1e-10) {
    if (x.dimension() != v.dimension()) throw DimensionMismatch("point and variety dimensions differ");
    if (!v.ambient().membership(x).inside()) return false;
    return variety_residual(v, x) <= tol;
}

struct HomogeneityResult {
    bool passed = true;
    /// First failing (X, λ) when passed is false.
    std::optional<MatrixTuple> witness_point;
    Complex witness_lambda{};
    int checks = 0;
};

/// Samples λX for in-variety X from `sampler` and each λ; fails on the first λX outside.
inline HomogeneityResult homogeneity_sample(const AlgebraicVariety& v, const PointSampler& sampler, int samples,
                                            std::span<const Complex> lambdas, std::uint64_t seed,
                                            int max_level = 3, double tol = 1e-10) {
    HomogeneityResult out;
    for (Complex lam : lambdas)
        if (!(std::abs(lam) < 1.0)) throw DomainError("homogeneity scalars must lie in the open unit disk");
    for (int i = 0; i < samples; ++i) {
        Rng rng(seed + static_cast<std::uint64_t>(i));
        const MatrixTuple x = sampler(rng, 1 + i % std::max(1, max_level));
        if (!variety_membership(v, x, tol)) throw DomainError("sampler produced a point outside the variety");
        for (Complex lam : lambdas) {
            ++out.checks;
            const MatrixTuple y = x.scaled(lam);
            if (!variety_membership(v, y, tol)) {
                out.passed = false;
                out.witness_point = x;
                out.witness_lambda = lam;
                return out;
            }
        }
    }
    return out;
}

/// A polynomial nc map Z ↦ (G_1(Z), …, G_e(Z)).
struct PolynomialMap {
    std::vector<FreePolynomial> components;

    MatrixTuple operator()(const MatrixTuple& x) const {
        std::vector<Matrix> out;
        for (const auto& g : components) out.push_back(eval_poly(g, x));
        return MatrixTuple(std::move(out));
    }

    /// (this ∘ inner)(Z) = this(inner(Z)).
    PolynomialMap after(const PolynomialMap& inner) const {
        PolynomialMap out;
        for (const auto& g : components) out.components.push_back(compose(g, inner.components));
        return out;
    }
};

struct Example412 {
    AlgebraicVariety v1;  // zeros(Z2 − Z1²)
    AlgebraicVariety v2;  // zeros(Z2 − Z1³)
    PolynomialMap forward;   // (Z1, Z2) ↦ (Z1, Z1³), V1 → V2
    PolynomialMap backward;  // (Z1, Z2) ↦ (Z1, Z1²), V2 → V1
};

/// The graphs {(X, X²)} and {(X, X³)} in the bidisk, biholomorphic through X.
inline Example412 example_4_12() {
    const auto z1 = FreePolynomial::variable(2, 1);
    const auto z2 = FreePolynomial::variable(2, 2);
    const auto sq = poly_pow(z1, 2);
    const auto cube = poly_pow(z1, 3);
    return Example412{
        AlgebraicVariety(polydisk(2), {z2 - sq}),
        AlgebraicVariety(polydisk(2), {z2 - cube}),
        PolynomialMap{{z1, cube}},
        PolynomialMap{{z1, sq}},
    };
}

/// T ↦ (T, T^power) for a random contraction T with ‖T‖ = 1 − margin.
inline PointSampler graph_sampler(int power, double margin = 0.1) {
    return [power, margin](Rng& rng, int level) {
        MatrixTuple t = sample_in_ball(polydisk(1), level, margin, rng);
        Matrix tp = Matrix::Identity(level, level);
        for (int k = 0; k < power; ++k) tp = tp * t(1);
        return MatrixTuple(std::vector<Matrix>{t(1), tp});
    };
}

}  // namespace ncball
