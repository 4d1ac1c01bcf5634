#pragma once

/**
 * @file io.hpp
 * @brief JSON file formats (points, pencils, realizations, varieties,
 *        polynomials), ball shorthands, and the CSV writer.
 *
 * Complex numbers are [re, im] pairs; matrices are row-major arrays of rows.
 * Doubles are written in shortest round-trip decimal form.
 */

#include "ncball/parse.hpp"
#include "ncball/varieties.hpp"

#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ncball {

using Json = nlohmann::json;

/// Malformed input files. The CLI reports these as usage errors.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace io {

inline Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError("expected a complex number as [re, im], got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
        throw FormatError("expected " + std::to_string(rows) + " matrix rows");
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw FormatError("expected " + std::to_string(cols) + " entries per matrix row");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline int positive_int(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<int>() < 1)
        throw FormatError(std::string("field '") + key + "' must be a positive integer");
    return j[key].get<int>();
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError("malformed JSON in '" + path + "': " + e.what());
    }
}

/// {"n", "d", "entries": [d matrices n×n of [re, im]]}
inline MatrixTuple point_from_json(const Json& j) {
    const int n = positive_int(j, "n");
    const int d = positive_int(j, "d");
    if (!j.contains("entries") || !j["entries"].is_array() || static_cast<int>(j["entries"].size()) != d)
        throw FormatError("point needs 'entries' with d matrices");
    std::vector<Matrix> mats;
    for (const auto& e : j["entries"]) mats.push_back(matrix_from_json(e, n, n));
    return MatrixTuple(std::move(mats));
}

inline Json point_to_json(const MatrixTuple& x) {
    Json entries = Json::array();
    for (const auto& m : x.entries()) entries.push_back(matrix_to_json(m));
    return Json{{"n", x.level()}, {"d", x.dimension()}, {"entries", std::move(entries)}};
}

/// {"d", "p", "q", "coefficients": [d matrices p×q]}
inline Pencil pencil_from_json(const Json& j) {
    const int d = positive_int(j, "d");
    const int p = positive_int(j, "p");
    const int q = positive_int(j, "q");
    if (!j.contains("coefficients") || !j["coefficients"].is_array() ||
        static_cast<int>(j["coefficients"].size()) != d)
        throw FormatError("pencil needs 'coefficients' with d matrices");
    std::vector<Matrix> c;
    for (const auto& e : j["coefficients"]) c.push_back(matrix_from_json(e, p, q));
    return Pencil(std::move(c));
}

inline Json pencil_to_json(const Pencil& q) {
    Json coeffs = Json::array();
    for (const auto& c : q.coefficients()) coeffs.push_back(matrix_to_json(c));
    return Json{{"d", q.dimension()}, {"p", q.rows()}, {"q", q.cols()}, {"coefficients", std::move(coeffs)}};
}

/// "row:d", "polydisk:d" or "pencil:FILE".
inline OperatorBall ball_from_shorthand(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw FormatError("ball must be row:d, polydisk:d or pencil:FILE");
    const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    if (kind == "pencil") return OperatorBall(pencil_from_json(read_json_file(arg)), spec);
    int d = 0;
    try {
        std::size_t used = 0;
        d = std::stoi(arg, &used);
        if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::logic_error&) {
        throw FormatError("bad ball dimension in '" + spec + "'");
    }
    if (kind == "row") return row_ball(d);
    if (kind == "polydisk") return polydisk(d);
    throw FormatError("unknown ball kind '" + kind + "'");
}

inline RowVector row_from_json(const Json& j, Eigen::Index len) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != len)
        throw FormatError("expected a vector of length " + std::to_string(len));
    RowVector v(len);
    for (Eigen::Index i = 0; i < len; ++i) v(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
    return v;
}

/// {"pencil": …, "m", "A": [re, im], "B": [m·p], "C": [m·q], "D": (m·q)×(m·p), "mode"}
inline Realization realization_from_json(const Json& j) {
    if (!j.contains("pencil")) throw FormatError("realization needs a 'pencil'");
    Pencil pencil = j["pencil"].is_string() ? ball_from_shorthand(j["pencil"].get<std::string>()).pencil()
                                            : pencil_from_json(j["pencil"]);
    const int m = positive_int(j, "m");
    const Eigen::Index sp = static_cast<Eigen::Index>(m) * pencil.rows();
    const Eigen::Index sq = static_cast<Eigen::Index>(m) * pencil.cols();
    for (const char* key : {"A", "B", "C", "D"})
        if (!j.contains(key)) throw FormatError(std::string("realization needs '") + key + "'");
    const Complex a = complex_from_json(j["A"]);
    RowVector b = row_from_json(j["B"], sp);
    Vector c = row_from_json(j["C"], sq).transpose();
    Matrix d = matrix_from_json(j["D"], sq, sp);
    RealizationMode mode = RealizationMode::Contraction;
    if (j.contains("mode")) {
        const auto s = j["mode"].get<std::string>();
        if (s == "isometry") mode = RealizationMode::Isometry;
        else if (s != "contraction") throw FormatError("mode must be 'contraction' or 'isometry'");
    }
    return Realization(std::move(pencil), m, a, std::move(b), std::move(c), std::move(d), mode);
}

inline Json realization_to_json(const Realization& f) {
    Json b = Json::array(), c = Json::array();
    for (Eigen::Index i = 0; i < f.B().size(); ++i) b.push_back(complex_to_json(f.B()(i)));
    for (Eigen::Index i = 0; i < f.C().size(); ++i) c.push_back(complex_to_json(f.C()(i)));
    return Json{{"pencil", pencil_to_json(f.pencil())},
                {"m", f.state_multiplicity()},
                {"A", complex_to_json(f.A())},
                {"B", std::move(b)},
                {"C", std::move(c)},
                {"D", matrix_to_json(f.D())},
                {"mode", to_string(f.mode())}};
}

/// "ex52" or a path to a realization JSON file.
inline Realization resolve_realization(const std::string& spec) {
    if (spec == "ex52") return example_5_2();
    return realization_from_json(read_json_file(spec));
}

/// {"ball": shorthand, "generators": [polynomial strings]}
inline AlgebraicVariety variety_from_json(const Json& j) {
    if (!j.contains("ball") || !j["ball"].is_string()) throw FormatError("variety needs a 'ball' shorthand");
    OperatorBall ball = ball_from_shorthand(j["ball"].get<std::string>());
    std::vector<FreePolynomial> gens;
    if (j.contains("generators"))
        for (const auto& g : j["generators"]) gens.push_back(parse(g.get<std::string>(), ball.dimension()));
    return AlgebraicVariety(std::move(ball), std::move(gens));
}

/// [[word, re, im], …] in length-lex order.
inline Json polynomial_to_json(const FreePolynomial& p) {
    Json out = Json::array();
    for (const auto& [w, re, im] : to_triples(p)) out.push_back(Json::array({w, re, im}));
    return out;
}

}  // namespace io

/// CSV with a leading "# ncball <version> seed=<seed> ..." comment and a header row.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::vector<std::string> columns, const std::string& provenance)
        : out_(out), width_(columns.size()) {
        out_ << "# ncball " << kVersion << ' ' << provenance << '\n';
        for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
        out_ << '\n';
    }

    template <class... Cells>
    void row(const Cells&... cells) {
        if (sizeof...(Cells) != width_) throw std::logic_error("CSV row width differs from header");
        std::size_t i = 0;
        ((out_ << (i++ ? "," : "") << cell(cells)), ...);
        out_ << '\n';
    }

private:
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long long v) { return std::to_string(v); }
    static std::string cell(std::uint64_t v) { return std::to_string(v); }
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }

    std::ostream& out_;
    std::size_t width_;
};

}  // namespace ncball
