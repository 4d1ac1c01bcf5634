#pragma once

// Command-line front end for ncball. run() is kept separate from main() so the
// test suite can drive every subcommand in-process.
//
// Exit codes: 0 success, 1 numerical/library failure, 2 usage or input error.

#include "ncball/ncball.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ncball::cli {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(part);
    return out;
}

inline std::vector<Complex> complex_list(const std::string& s) {
    std::vector<Complex> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_complex(part));
    return out;
}

inline std::vector<double> double_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& part : split(s, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::logic_error&) {
            throw UsageError("malformed number '" + part + "' in list '" + s + "'");
        }
    }
    return out;
}

/// Writes to --out when given, stdout otherwise.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

/// Target specs: f:R, resolvent:R, deltaJ:R, remainderW:R (R = ex52 or a JSON file), poly:EXPR.
inline NcFunction resolve_target(const std::string& spec, int poly_dimension) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("target must look like kind:argument, got '" + spec + "'");
    const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    if (kind == "poly") return parse(arg, poly_dimension);
    const Realization f = io::resolve_realization(arg);
    if (kind == "f") return f;
    if (kind == "resolvent") return resolvent_function(f, spec);
    if (kind.rfind("delta", 0) == 0 && kind.size() > 5) {
        int j = 0;
        try {
            j = std::stoi(kind.substr(5));
        } catch (const std::logic_error&) {
            throw UsageError("malformed delta index in '" + spec + "'");
        }
        if (j < 1 || j > f.dimension()) throw UsageError("delta index out of range in '" + spec + "'");
        return NcFunction::composite(f.dimension(), spec, [f, j](const MatrixTuple& x) {
            if (x.level() != 1) throw DomainError("delta targets are evaluated at scalar points");
            std::vector<Complex> base;
            for (const auto& m : x.entries()) base.push_back(m(0, 0));
            return Matrix::Constant(1, 1, delta_coordinate(NcFunction(f), base, j));
        });
    }
    if (kind.rfind("remainder", 0) == 0 && kind.size() > 9)
        return remainder_factor(f, Word::from_string(kind.substr(9), f.dimension()));
    throw UsageError("unknown target kind '" + kind + "'");
}

inline std::string provenance(std::uint64_t seed, const std::string& extra) {
    return "seed=" + std::to_string(seed) + (extra.empty() ? "" : " " + extra);
}

inline Complex closed_form_ex52(Complex x1, Complex x2) {
    return (2.0 * x1 * x2 - x1 - x2) / (x1 + x2 - 2.0);
}

inline Complex random_disk_point(Rng& rng, double radius = 0.999) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::sqrt(u(rng));
    const double t = 2.0 * std::numbers::pi * u(rng);
    return std::polar(r, t);
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"ncball: bounded nc functions on operator balls"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string poly, realization, point, ball_spec = "polydisk:2", out_path, target, path = "builtin", eps_list,
                                          x_list, dir_list, word, margins, variety_file, generators, case_name,
                                          map_list, target_ball, name;
    int level = 1, budget = 2000, order = 1, samples = 100, count = 10;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    unsigned threads = 1;

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a polynomial or realization at a point");
    eval_cmd->add_option("--poly", poly, "polynomial expression in z1..zd");
    eval_cmd->add_option("--realization", realization, "ex52 or realization JSON file");
    eval_cmd->add_option("--point", point, "point JSON file")->required();
    eval_cmd->add_option("--ball", ball_spec, "ball shorthand for the membership report");
    eval_cmd->add_option("--out", out_path);

    auto* coeff_cmd = app.add_subcommand("coeff", "power-series coefficients of a realization");
    coeff_cmd->add_option("--realization", realization)->required();
    coeff_cmd->add_option("--word", word, "single word, e.g. 12");
    coeff_cmd->add_option("--order,-N", order, "all words of size <= N");
    coeff_cmd->add_option("--seed", seed);
    coeff_cmd->add_option("--out", out_path);

    auto* delta_cmd = app.add_subcommand("delta", "first difference-differential at a scalar base point");
    delta_cmd->add_option("--poly", poly);
    delta_cmd->add_option("--realization", realization);
    delta_cmd->add_option("--point", point, "level-1 point JSON file");
    delta_cmd->add_option("--x", x_list, "base point as a complex list, e.g. 0.5,0.2i");
    delta_cmd->add_option("--dir", dir_list, "direction h as a complex list (default e1)");
    delta_cmd->add_option("--path", path, "builtin boundary-approach path");
    delta_cmd->add_option("--eps", eps_list, "comma-separated epsilons; switches to table output");
    delta_cmd->add_option("--seed", seed);
    delta_cmd->add_option("--out", out_path);

    auto* tt_cmd = app.add_subcommand("tt-check", "check the Taylor-Taylor identity at a point");
    tt_cmd->add_option("--poly", poly);
    tt_cmd->add_option("--realization", realization);
    tt_cmd->add_option("--point", point)->required();
    tt_cmd->add_option("--order,-N", order);
    tt_cmd->add_option("--tol", tol);
    tt_cmd->add_option("--out", out_path);

    auto* probe_cmd = app.add_subcommand("probe", "estimate a sup-norm lower bound over a ball level");
    probe_cmd->add_option("--poly", poly);
    probe_cmd->add_option("--realization", realization);
    probe_cmd->add_option("--target", target, "f:R, resolvent:R, deltaJ:R, remainderW:R or poly:EXPR");
    probe_cmd->add_option("--ball", ball_spec);
    probe_cmd->add_option("--level", level);
    probe_cmd->add_option("--budget", budget);
    probe_cmd->add_option("--seed", seed);
    probe_cmd->add_option("--margin", margins, "comma-separated sampling margins");
    probe_cmd->add_option("--threads", threads);
    probe_cmd->add_option("--out", out_path);

    auto* blowup_cmd = app.add_subcommand("blowup", "evaluate a target along a boundary-approach path");
    blowup_cmd->add_option("--target", target)->required();
    blowup_cmd->add_option("--path", path);
    blowup_cmd->add_option("--eps", eps_list)->required();
    blowup_cmd->add_option("--ball", ball_spec);
    blowup_cmd->add_option("--seed", seed);
    blowup_cmd->add_option("--out", out_path);

    auto* dich_cmd = app.add_subcommand("dichotomy", "interior/boundary dichotomy scan of a map into a ball");
    dich_cmd->add_option("--case", case_name, "builtin: half, identity, boundary");
    dich_cmd->add_option("--map", map_list, "semicolon-separated component polynomials");
    dich_cmd->add_option("--ball", ball_spec, "source ball");
    dich_cmd->add_option("--target-ball", target_ball, "target ball (default: source)");
    dich_cmd->add_option("--samples", samples);
    dich_cmd->add_option("--level", level, "maximum sampling level");
    dich_cmd->add_option("--seed", seed);
    dich_cmd->add_option("--out", out_path);

    auto* var_cmd = app.add_subcommand("variety", "membership of a point in an algebraic variety");
    var_cmd->add_option("--variety", variety_file, "variety JSON file");
    var_cmd->add_option("--ball", ball_spec);
    var_cmd->add_option("--generators", generators, "semicolon-separated generator polynomials");
    var_cmd->add_option("--point", point)->required();
    var_cmd->add_option("--tol", tol);
    var_cmd->add_option("--out", out_path);

    auto* repro_cmd = app.add_subcommand("reproduce", "reproduce a worked example: ex52, ex53, ex412, gleason");
    repro_cmd->add_option("name", name)->required();
    repro_cmd->add_option("--count", count);
    repro_cmd->add_option("--seed", seed);
    repro_cmd->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto function_from = [&](int d) -> NcFunction {
        const int chosen = !poly.empty() + !realization.empty() + !target.empty();
        if (chosen != 1) throw UsageError("give exactly one of --poly, --realization, --target");
        if (!poly.empty()) return parse(poly, d);
        if (!realization.empty()) return io::resolve_realization(realization);
        return detail::resolve_target(target, d);
    };

    try {
        detail::Output sink(out_path, out);
        std::ostream& os = *sink;

        if (eval_cmd->parsed()) {
            const MatrixTuple x = io::point_from_json(io::read_json_file(point));
            const NcFunction f = function_from(x.dimension());
            Json result{{"n", x.level()}, {"value", io::matrix_to_json(f(x))}};
            if (eval_cmd->count("--ball")) {
                const auto mem = io::ball_from_shorthand(ball_spec).membership(x);
                result["membership"] = {{"kind", to_string(mem.kind)}, {"value", mem.value}, {"norm", mem.norm}};
            }
            os << result.dump(2) << '\n';
        } else if (coeff_cmd->parsed()) {
            const Realization f = io::resolve_realization(realization);
            CsvWriter csv(os, {"word", "re", "im"}, detail::provenance(seed, "realization=" + realization));
            const std::vector<Word> words = word.empty() ? words_below(f.dimension(), order + 1)
                                                         : std::vector<Word>{Word::from_string(word, f.dimension())};
            for (const Word& w : words) {
                const Complex c = power_series_coefficient(f, w);
                csv.row(w.to_string(), c.real(), c.imag());
            }
        } else if (delta_cmd->parsed()) {
            const NcFunction f = poly.empty() && realization.empty() ? NcFunction(example_5_2()) : function_from(2);
            const auto d = static_cast<std::size_t>(f.dimension());
            std::vector<Complex> h(d, Complex{});
            if (dir_list.empty()) h[0] = 1.0;
            else h = detail::complex_list(dir_list);
            if (h.size() != d) throw UsageError("--dir needs " + std::to_string(d) + " coordinates");
            if (!eps_list.empty()) {
                if (path != "builtin") throw UsageError("only the builtin path is available");
                CsvWriter csv(os, {"epsilon", "re", "im", "modulus"}, detail::provenance(seed, "path=builtin"));
                for (double eps : detail::double_list(eps_list)) {
                    const Complex v = delta_first(f, builtin_path(eps, f.dimension()), h);
                    csv.row(eps, v.real(), v.imag(), std::abs(v));
                }
            } else {
                std::vector<Complex> x;
                if (!point.empty()) {
                    const MatrixTuple p = io::point_from_json(io::read_json_file(point));
                    if (p.level() != 1) throw UsageError("delta needs a level-1 base point");
                    for (const auto& m : p.entries()) x.push_back(m(0, 0));
                } else if (!x_list.empty()) {
                    x = detail::complex_list(x_list);
                } else {
                    throw UsageError("delta needs --point, --x, or --eps");
                }
                const Complex v = delta_first(f, x, h);
                os << Json{{"delta", io::complex_to_json(v)}, {"modulus", std::abs(v)}}.dump(2) << '\n';
            }
        } else if (tt_cmd->parsed()) {
            const MatrixTuple x = io::point_from_json(io::read_json_file(point));
            const int chosen = !poly.empty() + !realization.empty();
            if (chosen != 1) throw UsageError("give exactly one of --poly, --realization");
            const TTReport rep = poly.empty() ? tt_check(io::resolve_realization(realization), x, order, tol)
                                              : tt_check(parse(poly, x.dimension()), x, order, tol);
            os << Json{{"order", order}, {"defect", rep.defect}, {"tol", tol}, {"passed", rep.passed}}.dump(2)
               << '\n';
            if (!rep.passed) {
                err << "ncball: TT identity defect " << format_double(rep.defect) << " exceeds tolerance\n";
                return 1;
            }
        } else if (probe_cmd->parsed()) {
            const OperatorBall ball = io::ball_from_shorthand(ball_spec);
            const NcFunction f = function_from(ball.dimension());
            ProbeOptions opts;
            opts.threads = threads;
            if (!margins.empty()) opts.margins = detail::double_list(margins);
            const ProbeReport rep = estimate_sup(f, ball, level, budget, seed, opts);
            CsvWriter csv(os, {"iteration", "sample_id", "value", "boundary_distance", "seed"},
                          detail::provenance(seed, "target=" + rep.target + " ball=" + rep.ball +
                                                       " level=" + std::to_string(level) +
                                                       " budget=" + std::to_string(budget)));
            for (const auto& r : rep.trajectory) csv.row(r.iteration, r.sample_id, r.value, r.boundary_distance, seed);
            err << "best=" << format_double(rep.best) << " failures=" << rep.failures << '\n';
        } else if (blowup_cmd->parsed()) {
            if (path != "builtin") throw UsageError("only the builtin path is available");
            const OperatorBall ball = io::ball_from_shorthand(ball_spec);
            const NcFunction g = detail::resolve_target(target, ball.dimension());
            const auto eps = detail::double_list(eps_list);
            const int d = ball.dimension();
            const BlowupTable table =
                blowup_scan(g, ball, [d](double e) { return builtin_path(e, d); }, eps);
            CsvWriter csv(os, {"epsilon", "re", "im", "modulus", "boundary_distance"},
                          detail::provenance(seed, "target=" + target + " path=builtin"));
            for (const auto& r : table.rows) csv.row(r.eps, r.value.real(), r.value.imag(), r.norm, r.boundary_distance);
            err << "monotone_growth=" << (table.monotone_growth ? "true" : "false") << '\n';
        } else if (dich_cmd->parsed()) {
            std::vector<NcFunction> F;
            OperatorBall source = io::ball_from_shorthand(ball_spec);
            std::optional<OperatorBall> dest;
            if (!case_name.empty()) {
                source = polydisk(2);
                const auto z1 = FreePolynomial::variable(2, 1), z2 = FreePolynomial::variable(2, 2);
                if (case_name == "half") F = {poly_scale(0.5, z1), poly_scale(0.5, z2)};
                else if (case_name == "identity") F = {z1, z2};
                else if (case_name == "boundary") F = {FreePolynomial::constant(2, 1.0), FreePolynomial(2)};
                else throw UsageError("unknown dichotomy case '" + case_name + "'");
            } else {
                if (map_list.empty()) throw UsageError("dichotomy needs --case or --map");
                for (const auto& part : detail::split(map_list, ';')) F.emplace_back(parse(part, source.dimension()));
            }
            dest = target_ball.empty() ? source : io::ball_from_shorthand(target_ball);
            const auto res = dichotomy_scan(F, source, dest->pencil(), samples, seed, level);
            os << Json{{"kind", to_string(res.kind)}, {"max_s", res.max_s}, {"min_s", res.min_s},
                       {"samples", res.samples}, {"seed", seed}}
                      .dump(2)
               << '\n';
        } else if (var_cmd->parsed()) {
            const MatrixTuple x = io::point_from_json(io::read_json_file(point));
            std::optional<AlgebraicVariety> v;
            if (!variety_file.empty()) {
                v = io::variety_from_json(io::read_json_file(variety_file));
            } else {
                OperatorBall ball = io::ball_from_shorthand(ball_spec);
                std::vector<FreePolynomial> gens;
                for (const auto& g : detail::split(generators, ';'))
                    if (!g.empty()) gens.push_back(parse(g, ball.dimension()));
                v.emplace(std::move(ball), std::move(gens));
            }
            const auto mem = v->ambient().membership(x);
            os << Json{{"member", variety_membership(*v, x, tol)},
                       {"residual", variety_residual(*v, x)},
                       {"ball", to_string(mem.kind)}}
                      .dump(2)
               << '\n';
        } else if (repro_cmd->parsed()) {
            Rng rng(seed);
            const NcFunction f = example_5_2();
            if (name == "ex52") {
                CsvWriter csv(os, {"x1_re", "x1_im", "x2_re", "x2_im", "realization_re", "realization_im", "closed_re",
                                   "closed_im", "abs_diff"},
                              detail::provenance(seed, "example=ex52"));
                for (int i = 0; i < count; ++i) {
                    const Complex x1 = detail::random_disk_point(rng), x2 = detail::random_disk_point(rng);
                    const Complex v = f(MatrixTuple::scalar({x1, x2}))(0, 0);
                    const Complex c = detail::closed_form_ex52(x1, x2);
                    csv.row(x1.real(), x1.imag(), x2.real(), x2.imag(), v.real(), v.imag(), c.real(), c.imag(),
                            std::abs(v - c));
                }
            } else if (name == "ex53") {
                CsvWriter csv(os, {"epsilon", "re", "im", "modulus", "predicted_modulus", "relative_error"},
                              detail::provenance(seed, "example=ex53 path=builtin"));
                for (double eps : {0.1, 0.01, 0.001}) {
                    const Complex v = delta_coordinate(f, builtin_path(eps), 1);
                    const double predicted = std::sqrt(0.25 + 0.25 / (eps * eps));
                    csv.row(eps, v.real(), v.imag(), std::abs(v), predicted, std::abs(std::abs(v) - predicted) / predicted);
                }
            } else if (name == "ex412") {
                const Example412 ex = example_4_12();
                CsvWriter csv(os, {"sample", "level", "v1_residual", "forward_v2_residual", "roundtrip_error"},
                              detail::provenance(seed, "example=ex412"));
                const PointSampler sampler = graph_sampler(2);
                for (int i = 0; i < count; ++i) {
                    Rng local(seed + static_cast<std::uint64_t>(i));
                    const int lvl = 1 + i % 4;
                    const MatrixTuple x = sampler(local, lvl);
                    const MatrixTuple y = ex.forward(x);
                    const MatrixTuple back = ex.backward(y);
                    double rt = 0.0;
                    for (int j = 1; j <= 2; ++j) rt = std::max(rt, op_norm(back(j) - x(j)));
                    csv.row(i, lvl, variety_residual(ex.v1, x), variety_residual(ex.v2, y), rt);
                }
                const Complex half = 0.5;
                const auto hom = homogeneity_sample(ex.v1, sampler, 4, std::span<const Complex>(&half, 1), seed);
                err << "V1 homogeneous under lambda=1/2: " << (hom.passed ? "yes" : "no (witness found)") << '\n';
            } else if (name == "gleason") {
                CsvWriter csv(os, {"x1_re", "x1_im", "x2_re", "x2_im", "g1_modulus", "g2_modulus", "identity_defect"},
                              detail::provenance(seed, "example=gleason"));
                const Complex f0 = f(MatrixTuple::scalar({0.0, 0.0}))(0, 0);
                for (int i = 0; i < count; ++i) {
                    const Complex x1 = detail::random_disk_point(rng), x2 = detail::random_disk_point(rng);
                    const auto g = gleason_split(f, x1, x2);
                    const Complex fx = f(MatrixTuple::scalar({x1, x2}))(0, 0);
                    csv.row(x1.real(), x1.imag(), x2.real(), x2.imag(), std::abs(g.g1), std::abs(g.g2),
                            std::abs(fx - f0 - g.g1 * x1 - g.g2 * x2));
                }
            } else {
                throw UsageError("unknown example '" + name + "' (ex52, ex53, ex412, gleason)");
            }
        }
        return 0;
    } catch (const UsageError& e) {
        err << "ncball: " << e.what() << '\n';
        return 2;
    } catch (const FormatError& e) {
        err << "ncball: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "ncball: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "ncball: " << e.what() << '\n';
        return 1;
    } catch (const Json::exception& e) {
        err << "ncball: malformed input: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace ncball::cli
