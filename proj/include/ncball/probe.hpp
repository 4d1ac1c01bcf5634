#pragma once

/**
 * @file probe.hpp
 * @brief Seeded numerical probes over operator-ball levels: sup-norm lower
 *        bounds by multistart + hill climbing, boundary-approach blowup scans,
 *        the interior/boundary dichotomy scan, and right-regularity factors.
 *
 * Every random draw for sample i uses its own generator seeded with seed + i,
 * so serial and threaded runs produce identical reports.
 *
 * Reported values are lower bounds for suprema, never certificates.
 */

#include "ncball/ncdiff.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace ncball {

using Rng = std::mt19937_64;

/// Independent standard complex-Gaussian entries (real and imaginary parts N(0, 1)).
inline MatrixTuple random_tuple(int n, int d, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Matrix> mats;
    for (int j = 0; j < d; ++j) {
        Matrix m(n, n);
        for (Eigen::Index c = 0; c < n; ++c)
            for (Eigen::Index r = 0; r < n; ++r) {
                const double re = normal(rng);
                const double im = normal(rng);
                m(r, c) = Complex(re, im);
            }
        mats.push_back(std::move(m));
    }
    return MatrixTuple(std::move(mats));
}

/// Gaussian draw rescaled so that ‖Q(X)‖ = 1 − margin.
inline MatrixTuple sample_in_ball(const OperatorBall& ball, int n, double margin, Rng& rng) {
    if (!(margin > 0.0 && margin < 1.0)) throw DomainError("sampling margin must lie in (0, 1)");
    for (int attempt = 0; attempt < 100; ++attempt) {
        MatrixTuple x = random_tuple(n, ball.dimension(), rng);
        const double s = ball.norm(x);
        if (s > 0.0 && std::isfinite(s)) return x.scaled((1.0 - margin) / s);
    }
    throw Error("degenerate draws: 100 consecutive samples had Q(X) = 0");
}

/// Random isometry C^k -> C^n (Q factor of a Gaussian n×k matrix).
inline Matrix random_isometry(int n, int k, Rng& rng) {
    if (k > n) throw DomainError("an isometry C^k -> C^n needs k <= n");
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(n, k);
    for (Eigen::Index c = 0; c < k; ++c)
        for (Eigen::Index r = 0; r < n; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(n, k);
}

struct SampleRecord {
    int iteration;
    /// Multistart index, or -1 for hill-climbing steps.
    long long sample_id;
    double value;
    double boundary_distance;
};

struct ProbeReport {
    std::string target;
    std::string ball;
    int level = 0;
    int budget = 0;
    std::uint64_t seed = 0;
    double best = 0.0;
    /// Best value after the multistart phase only.
    double multistart_best = 0.0;
    std::optional<MatrixTuple> argmax;
    std::vector<SampleRecord> trajectory;
    int failures = 0;
};

struct ProbeOptions {
    std::vector<double> margins{0.5, 0.1, 0.01, 0.001};
    /// Points placed at the front of the multistart pool (they count toward the budget).
    std::vector<MatrixTuple> injected;
    /// Hill climbing keeps ‖Q(X)‖ ≤ 1 − min_boundary.
    double min_boundary = 1e-6;
    double initial_step = 0.1;
    double step_floor = 1e-6;
    unsigned threads = 1;
};

namespace detail {

struct Evaluated {
    double value = -1.0;
    double boundary = 0.0;
    bool ok = false;
};

inline Evaluated evaluate_norm(const NcFunction& f, const OperatorBall& ball, const MatrixTuple& x) {
    Evaluated e;
    e.boundary = 1.0 - ball.norm(x);
    try {
        const Matrix v = f(x);
        const double nv = op_norm(v);
        if (std::isfinite(nv)) {
            e.value = nv;
            e.ok = true;
        }
    } catch (const Error&) {
    }
    return e;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. fn must write only to slot i.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += workers) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

inline ProbeReport estimate_sup(const NcFunction& f, const OperatorBall& ball, int n, int budget,
                                std::uint64_t seed, const ProbeOptions& opts = {}) {
    if (budget < 1) throw DomainError("probe budget must be at least 1");
    if (n < 1) throw DomainError("probe level must be positive");
    if (f.dimension() != ball.dimension()) throw DimensionMismatch("function and ball dimensions differ");
    if (opts.margins.empty()) throw DomainError("at least one sampling margin is required");

    ProbeReport report;
    report.target = f.describe();
    report.ball = ball.name();
    report.level = n;
    report.budget = budget;
    report.seed = seed;

    const auto starts = static_cast<std::size_t>(std::max(1, budget / 2));
    std::vector<MatrixTuple> points(starts, MatrixTuple(n, ball.dimension()));
    std::vector<detail::Evaluated> results(starts);
    detail::parallel_for(starts, opts.threads, [&](std::size_t i) {
        if (i < opts.injected.size()) {
            points[i] = opts.injected[i];
        } else {
            Rng rng(seed + i);
            points[i] = sample_in_ball(ball, n, opts.margins[i % opts.margins.size()], rng);
        }
        results[i] = detail::evaluate_norm(f, ball, points[i]);
    });

    std::optional<std::size_t> best_index;
    int iteration = 0;
    for (std::size_t i = 0; i < starts; ++i) {
        const auto& r = results[i];
        if (!r.ok) {
            ++report.failures;
            report.trajectory.push_back({iteration++, static_cast<long long>(i),
                                         std::numeric_limits<double>::quiet_NaN(), r.boundary});
            continue;
        }
        report.trajectory.push_back({iteration++, static_cast<long long>(i), r.value, r.boundary});
        if (!best_index || r.value > results[*best_index].value) best_index = i;
    }
    if (!best_index) return report;

    MatrixTuple current = points[*best_index];
    double best = results[*best_index].value;
    report.multistart_best = best;

    int remaining = budget - static_cast<int>(starts);
    const double cap = 1.0 - opts.min_boundary;
    double step = opts.initial_step;
    while (remaining > 0 && step >= opts.step_floor) {
        bool improved = false;
        for (int j = 1; j <= ball.dimension() && remaining > 0; ++j)
            for (Eigen::Index c = 0; c < n && remaining > 0; ++c)
                for (Eigen::Index r = 0; r < n && remaining > 0; ++r)
                    for (const Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
                        if (remaining == 0) break;
                        MatrixTuple cand = current;
                        cand(j)(r, c) += step * dir;
                        const double s = ball.norm(cand);
                        if (s > cap) cand = cand.scaled(cap / s);
                        const auto e = detail::evaluate_norm(f, ball, cand);
                        --remaining;
                        if (!e.ok) {
                            ++report.failures;
                            report.trajectory.push_back(
                                {iteration++, -1, std::numeric_limits<double>::quiet_NaN(), e.boundary});
                            continue;
                        }
                        report.trajectory.push_back({iteration++, -1, e.value, e.boundary});
                        if (e.value > best) {
                            best = e.value;
                            current = std::move(cand);
                            improved = true;
                            break;
                        }
                    }
        if (!improved) step *= 0.5;
    }
    report.best = best;
    report.argmax = std::move(current);
    return report;
}

/// x(ε) = (1 − ε² + iε, 1 − ε² − iε, …) with alternating imaginary signs; for
/// d = 2 this is the boundary-approach path of the bidisk counterexample.
inline std::vector<Complex> builtin_path(double eps, int d = 2) {
    std::vector<Complex> x;
    for (int j = 0; j < d; ++j) x.emplace_back(1.0 - eps * eps, j % 2 == 0 ? eps : -eps);
    return x;
}

struct BlowupRow {
    double eps;
    /// The (1,1) entry, meaningful when the function is scalar-valued at level 1.
    Complex value;
    double norm;
    double boundary_distance;
};

struct BlowupTable {
    std::string target;
    std::vector<BlowupRow> rows;
    /// Norms strictly increase as ε decreases along the supplied list order.
    bool monotone_growth = false;
};

using ScalarPath = std::function<std::vector<Complex>(double)>;

inline BlowupTable blowup_scan(const NcFunction& g, const OperatorBall& ball, const ScalarPath& path,
                               std::span<const double> eps_list) {
    BlowupTable table;
    table.target = g.describe();
    for (double eps : eps_list) {
        const auto x = MatrixTuple::scalar(path(eps));
        const auto mem = ball.membership(x);
        if (!mem.inside())
            throw DomainError("path point at eps=" + format_double(eps) + " is not inside the ball (" +
                              to_string(mem.kind) + ")");
        const Matrix v = g(x);
        table.rows.push_back({eps, v(0, 0), op_norm(v), mem.value});
    }
    table.monotone_growth = table.rows.size() >= 2;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const bool closer = table.rows[i].eps < table.rows[i - 1].eps;
        const bool grew = table.rows[i].norm > table.rows[i - 1].norm;
        if (closer != grew) table.monotone_growth = false;
    }
    return table;
}

struct DichotomyResult {
    enum class Kind { AllInterior, AllBoundary, Mixed };

    Kind kind;
    double max_s;
    double min_s;
    /// For Mixed: one sample index on each side of the 1 − 1e-6 threshold.
    long long interior_witness = -1;
    long long boundary_witness = -1;
    int samples = 0;
};

inline const char* to_string(DichotomyResult::Kind k) {
    switch (k) {
        case DichotomyResult::Kind::AllInterior: return "AllInterior";
        case DichotomyResult::Kind::AllBoundary: return "AllBoundary";
        case DichotomyResult::Kind::Mixed: return "Mixed";
    }
    return "?";
}

/// Optional point source replacing ball sampling (e.g. a variety parameterization).
using PointSampler = std::function<MatrixTuple(Rng&, int level)>;

/// Classifies s_i = ‖P(F(X_i))‖ over seeded samples X_i. A Mixed answer is
/// numerical evidence only.
inline DichotomyResult dichotomy_scan(const std::vector<NcFunction>& F, const OperatorBall& source,
                                      const Pencil& target, int samples, std::uint64_t seed,
                                      int max_level = 3, const PointSampler& sampler = {}) {
    if (F.size() != static_cast<std::size_t>(target.dimension()))
        throw DimensionMismatch("map has " + std::to_string(F.size()) + " components, target pencil expects " +
                                std::to_string(target.dimension()));
    if (samples < 1) throw DomainError("dichotomy scan needs at least one sample");
    for (const auto& fi : F)
        if (fi.dimension() != source.dimension()) throw DimensionMismatch("map component dimension differs from source ball");
    static constexpr double kThreshold = 1.0 - 1e-6;
    const double margins[] = {0.5, 0.1, 0.01};
    DichotomyResult out{DichotomyResult::Kind::Mixed, 0.0, std::numeric_limits<double>::infinity()};
    out.samples = samples;
    for (int i = 0; i < samples; ++i) {
        Rng rng(seed + static_cast<std::uint64_t>(i));
        const int level = 1 + i % std::max(1, max_level);
        const MatrixTuple x = sampler ? sampler(rng, level) : sample_in_ball(source, level, margins[i % 3], rng);
        std::vector<Matrix> image;
        for (const auto& fi : F) image.push_back(fi(x));
        const double s = op_norm(pencil_eval(target, MatrixTuple(std::move(image))));
        out.max_s = std::max(out.max_s, s);
        out.min_s = std::min(out.min_s, s);
        if (s < kThreshold && out.interior_witness < 0) out.interior_witness = i;
        if (s >= kThreshold && out.boundary_witness < 0) out.boundary_witness = i;
    }
    if (out.max_s < kThreshold) out.kind = DichotomyResult::Kind::AllInterior;
    else if (out.min_s > kThreshold) out.kind = DichotomyResult::Kind::AllBoundary;
    return out;
}

/// X ↦ [X^{w_1} ⋯ X^{w_K}] over |w| = N in length-lex order, shape n×(K·n).
inline NcFunction word_row(int d, int N) {
    const auto words = words_of_size(d, N, 10'000);
    return NcFunction::composite(d, "row(X^w)_{|w|=" + std::to_string(N) + "}", [words](const MatrixTuple& x) {
        const Eigen::Index n = x.level();
        Matrix out(n, n * static_cast<Eigen::Index>(words.size()));
        for (std::size_t i = 0; i < words.size(); ++i)
            out.block(0, static_cast<Eigen::Index>(i) * n, n, n) = eval_word(x, words[i]);
        return out;
    });
}

/// Column stack of evaluables, each n×n at level n.
inline NcFunction column_stack(int d, std::string name, std::vector<NcFunction> parts) {
    return NcFunction::composite(d, std::move(name), [parts = std::move(parts)](const MatrixTuple& x) {
        const Eigen::Index n = x.level();
        Matrix out(n * static_cast<Eigen::Index>(parts.size()), n);
        for (std::size_t i = 0; i < parts.size(); ++i)
            out.block(static_cast<Eigen::Index>(i) * n, 0, n, n) = parts[i](x);
        return out;
    });
}

struct RegularityReport {
    ProbeReport row;
    ProbeReport col;
    /// Column estimates at budgets B/4, B/2, B.
    std::vector<double> col_by_budget;
    /// Column estimate kept growing by more than 25% per budget doubling.
    bool col_nonconvergent = false;

    double row_factor() const { return row.best; }
    double col_factor() const { return col.best; }
};

namespace detail {

inline std::vector<NcFunction> remainder_columns(const std::variant<Realization, FreePolynomial>& f, int N) {
    std::vector<NcFunction> out;
    if (const auto* r = std::get_if<Realization>(&f)) {
        for (const Word& v : words_below(r->dimension(), N))
            if (std::abs(power_series_coefficient(*r, v)) > 1e-12)
                throw DomainError("realization is not in J_N: coefficient of word '" + v.to_string() + "' is nonzero");
        for (const Word& w : words_of_size(r->dimension(), N, 10'000)) out.emplace_back(remainder_factor(*r, w));
    } else {
        const auto& p = std::get<FreePolynomial>(f);
        if (word_count(p.dimension(), N) > 10'000) throw BudgetExceeded("d^N exceeds 10^4");
        for (auto& [w, q] : left_divide(p, N)) out.emplace_back(q);
    }
    return out;
}

// Boundary-approach points along builtin_path, ampliated to level n, that lie inside the ball.
inline std::vector<MatrixTuple> injected_path_points(const OperatorBall& ball, int n, int budget) {
    std::vector<MatrixTuple> out;
    int depth = 0;
    for (int b = budget; b > 1; b /= 2) ++depth;
    depth = std::max(1, depth - 2);
    double eps = 0.1;
    for (int k = 0; k < depth; ++k, eps *= 0.5) {
        const auto x = MatrixTuple::scalar(builtin_path(eps, ball.dimension()));
        if (ball.membership(x).inside()) out.push_back(ampliation(x, n));
    }
    return out;
}

}  // namespace detail

/// Lower-bound estimates of sup‖row(X^w)‖ and sup‖col(Δ^w f(0,…,0,X))‖ over |w| = N.
inline RegularityReport regularity_factors(const std::variant<Realization, FreePolynomial>& f, int N,
                                           const OperatorBall& ball, int n, int budget, std::uint64_t seed,
                                           unsigned threads = 1) {
    if (N < 1) throw DomainError("regularity order must be positive");
    const int d = std::visit([](const auto& g) { return g.dimension(); }, f);
    if (d != ball.dimension()) throw DimensionMismatch("function and ball dimensions differ");
    if (word_count(d, N) > 10'000) throw BudgetExceeded("d^N exceeds 10^4");

    RegularityReport out;
    ProbeOptions base;
    base.threads = threads;
    out.row = estimate_sup(word_row(d, N), ball, n, budget, seed, base);

    const NcFunction col = column_stack(d, "col(f_w)_{|w|=" + std::to_string(N) + "}", detail::remainder_columns(f, N));
    for (int b : {std::max(1, budget / 4), std::max(1, budget / 2), budget}) {
        ProbeOptions opts = base;
        opts.injected = detail::injected_path_points(ball, n, b);
        auto rep = estimate_sup(col, ball, n, b, seed, opts);
        out.col_by_budget.push_back(rep.best);
        if (b == budget) out.col = std::move(rep);
    }
    const auto& c = out.col_by_budget;
    out.col_nonconvergent = c[1] > 1.25 * c[0] && c[2] > 1.25 * c[1];
    return out;
}

}  // namespace ncball
