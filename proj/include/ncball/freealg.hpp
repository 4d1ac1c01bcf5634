#pragma once

/**
 * @file freealg.hpp
 * @brief Free words over {1..d} and sparse free nc polynomials.
 *
 * Words are ordered length-lexicographically (shorter first, then letter by
 * letter with 1 < 2 < ... < d). Every enumeration, stacking and serialization
 * in the library uses this order.
 *
 * Polynomial coefficients compare exactly; a coefficient is dropped only when
 * it is exactly zero.
 */

#include "ncball/core.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ncball {

inline constexpr std::uint64_t kWordEnumerationBudget = 1'000'000;

/// Number of words of size k over d letters, saturating at UINT64_MAX.
inline std::uint64_t word_count(int d, int k) {
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) {
        if (total > UINT64_MAX / static_cast<std::uint64_t>(d)) return UINT64_MAX;
        total *= static_cast<std::uint64_t>(d);
    }
    return total;
}

class Word {
public:
    /// Unit word over d letters.
    explicit Word(int d = 1) : d_(d) {
        if (d < 1) throw DomainError("word dimension must be positive");
    }

    Word(int d, std::vector<int> letters) : d_(d), letters_(std::move(letters)) {
        if (d < 1) throw DomainError("word dimension must be positive");
        for (int l : letters_)
            if (l < 1 || l > d)
                throw DomainError("letter " + std::to_string(l) + " outside [1, " +
                                  std::to_string(d) + "]");
    }

    /// Parses "121" (d <= 9) or "10.2.3" (dot-separated, any d). Empty string is the unit word.
    static Word from_string(const std::string& s, int d) {
        std::vector<int> letters;
        if (d > 9 || s.find('.') != std::string::npos) {
            std::stringstream ss(s);
            std::string part;
            while (std::getline(ss, part, '.')) {
                if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
                    throw DomainError("malformed word '" + s + "'");
                letters.push_back(std::stoi(part));
            }
        } else {
            for (char c : s) {
                if (c < '0' || c > '9') throw DomainError("malformed word '" + s + "'");
                letters.push_back(c - '0');
            }
        }
        return Word(d, std::move(letters));
    }

    int dimension() const noexcept { return d_; }
    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    const std::vector<int>& letters() const noexcept { return letters_; }
    int operator[](std::size_t i) const { return letters_[i]; }

    Word operator+(const Word& rhs) const {
        check_same(rhs);
        std::vector<int> l = letters_;
        l.insert(l.end(), rhs.letters_.begin(), rhs.letters_.end());
        return Word(d_, std::move(l));
    }

    /// Prefix of length k and the matching suffix.
    Word prefix(std::size_t k) const {
        return Word(d_, std::vector<int>(letters_.begin(), letters_.begin() + k));
    }
    Word suffix_from(std::size_t k) const {
        return Word(d_, std::vector<int>(letters_.begin() + k, letters_.end()));
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            if (d_ > 9 && i > 0) out += '.';
            out += std::to_string(letters_[i]);
        }
        return out;
    }

    friend bool operator==(const Word& a, const Word& b) {
        return a.d_ == b.d_ && a.letters_ == b.letters_;
    }
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
        if (auto c = a.letters_ <=> b.letters_; c != 0) return c;
        return a.d_ <=> b.d_;
    }

private:
    void check_same(const Word& rhs) const {
        if (rhs.d_ != d_) throw DimensionMismatch("words over different alphabets");
    }

    int d_;
    std::vector<int> letters_;
};

/// All words of size exactly k, length-lex order. Throws past the enumeration budget.
inline std::vector<Word> words_of_size(int d, int k,
                                       std::uint64_t budget = kWordEnumerationBudget) {
    if (word_count(d, k) > budget)
        throw BudgetExceeded(std::to_string(d) + "^" + std::to_string(k) +
                             " words exceed the enumeration budget");
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(word_count(d, k)));
    std::vector<int> cur(static_cast<std::size_t>(k), 1);
    while (true) {
        out.emplace_back(d, cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == d) cur[static_cast<std::size_t>(i--)] = 1;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
    }
    return out;
}

/// All words of size < k, length-lex order.
inline std::vector<Word> words_below(int d, int k,
                                     std::uint64_t budget = kWordEnumerationBudget) {
    std::vector<Word> out;
    for (int j = 0; j < k; ++j) {
        auto layer = words_of_size(d, j, budget);
        out.insert(out.end(), layer.begin(), layer.end());
        if (out.size() > budget) throw BudgetExceeded("word enumeration budget exceeded");
    }
    return out;
}

class FreePolynomial {
public:
    using Terms = std::map<Word, Complex>;

    explicit FreePolynomial(int d = 1) : d_(d) {
        if (d < 1) throw DomainError("polynomial dimension must be positive");
    }

    static FreePolynomial constant(int d, Complex c) {
        FreePolynomial p(d);
        p.add_term(Word(d), c);
        return p;
    }
    static FreePolynomial variable(int d, int j) { return monomial(Word(d, {j})); }
    static FreePolynomial monomial(const Word& w, Complex c = 1.0) {
        FreePolynomial p(w.dimension());
        p.add_term(w, c);
        return p;
    }

    int dimension() const noexcept { return d_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Largest word size; -1 for the zero polynomial.
    int degree() const noexcept {
        return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size());
    }
    /// Smallest word size; -1 for the zero polynomial.
    int min_degree() const noexcept {
        return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.size());
    }

    Complex coefficient(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Complex{} : it->second;
    }

    /// Accumulates c into the coefficient of w; exact zeros are removed.
    void add_term(const Word& w, Complex c) {
        if (w.dimension() != d_) throw DimensionMismatch("word dimension differs from polynomial");
        if (c == Complex{}) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Complex{}) terms_.erase(it);
        }
    }

    friend bool operator==(const FreePolynomial& a, const FreePolynomial& b) {
        return a.d_ == b.d_ && a.terms_ == b.terms_;
    }

private:
    int d_;
    Terms terms_;
};

inline void require_same_dimension(const FreePolynomial& p, const FreePolynomial& q) {
    if (p.dimension() != q.dimension())
        throw DimensionMismatch("polynomials in " + std::to_string(p.dimension()) + " and " +
                                std::to_string(q.dimension()) + " variables");
}

inline FreePolynomial poly_add(const FreePolynomial& p, const FreePolynomial& q) {
    require_same_dimension(p, q);
    FreePolynomial out = p;
    for (const auto& [w, c] : q.terms()) out.add_term(w, c);
    return out;
}

inline FreePolynomial poly_scale(Complex lambda, const FreePolynomial& p) {
    FreePolynomial out(p.dimension());
    if (lambda == Complex{}) return out;
    for (const auto& [w, c] : p.terms()) out.add_term(w, lambda * c);
    return out;
}

/// Free convolution: c_w = sum over factorizations w = uv of p_u q_v.
inline FreePolynomial poly_mul(const FreePolynomial& p, const FreePolynomial& q) {
    require_same_dimension(p, q);
    FreePolynomial out(p.dimension());
    for (const auto& [u, a] : p.terms())
        for (const auto& [v, b] : q.terms()) out.add_term(u + v, a * b);
    return out;
}

inline FreePolynomial operator+(const FreePolynomial& p, const FreePolynomial& q) { return poly_add(p, q); }
inline FreePolynomial operator-(const FreePolynomial& p) { return poly_scale(-1.0, p); }
inline FreePolynomial operator-(const FreePolynomial& p, const FreePolynomial& q) {
    return poly_add(p, poly_scale(-1.0, q));
}
inline FreePolynomial operator*(const FreePolynomial& p, const FreePolynomial& q) { return poly_mul(p, q); }
inline FreePolynomial operator*(Complex c, const FreePolynomial& p) { return poly_scale(c, p); }

/// k-fold nc product; p^0 is the constant 1.
inline FreePolynomial poly_pow(const FreePolynomial& p, unsigned k) {
    FreePolynomial out = FreePolynomial::constant(p.dimension(), 1.0);
    for (unsigned i = 0; i < k; ++i) out = poly_mul(out, p);
    return out;
}

/// Degree-k part: sum over |w| = k of c_w Z^w.
inline FreePolynomial homogeneous_component(const FreePolynomial& p, int k) {
    FreePolynomial out(p.dimension());
    for (const auto& [w, c] : p.terms())
        if (static_cast<int>(w.size()) == k) out.add_term(w, c);
    return out;
}

/// Cesàro mean sum_{k<N} (1 - k/N) P_k of the homogeneous expansion.
inline FreePolynomial cesaro_sum(const FreePolynomial& p, int N) {
    if (N < 1) throw DomainError("Cesaro order must be positive");
    FreePolynomial out(p.dimension());
    for (const auto& [w, c] : p.terms()) {
        const auto k = static_cast<int>(w.size());
        if (k < N) out.add_term(w, (1.0 - static_cast<double>(k) / N) * c);
    }
    return out;
}

/// Cesàro sum from an arbitrary coefficient source (e.g. a realization's power series).
inline FreePolynomial cesaro_sum(int d, const std::function<Complex(const Word&)>& coefficient, int N) {
    if (N < 1) throw DomainError("Cesaro order must be positive");
    FreePolynomial out(d);
    for (const Word& w : words_below(d, N)) {
        const double weight = 1.0 - static_cast<double>(w.size()) / N;
        out.add_term(w, weight * coefficient(w));
    }
    return out;
}

/// Splits P in J_N as P = sum_{|w|=N} Z^w f_w. Returns every f_w, including zeros.
inline std::map<Word, FreePolynomial> left_divide(const FreePolynomial& p, int N) {
    if (N < 1) throw DomainError("division length must be positive");
    if (!p.is_zero() && p.min_degree() < N)
        throw DomainError("polynomial has a word of size " + std::to_string(p.min_degree()) +
                          " < " + std::to_string(N) + "; it is not in J_N");
    std::map<Word, FreePolynomial> out;
    for (const Word& w : words_of_size(p.dimension(), N)) out.emplace(w, FreePolynomial(p.dimension()));
    const auto n = static_cast<std::size_t>(N);
    for (const auto& [w, c] : p.terms()) out.at(w.prefix(n)).add_term(w.suffix_from(n), c);
    return out;
}

/// Substitution P(G_1, ..., G_d) where every G_j lives in e variables.
inline FreePolynomial compose(const FreePolynomial& p, const std::vector<FreePolynomial>& g) {
    if (g.size() != static_cast<std::size_t>(p.dimension()))
        throw DimensionMismatch("substitution needs one polynomial per variable");
    if (g.empty()) throw DomainError("empty substitution");
    const int e = g.front().dimension();
    for (const auto& gj : g)
        if (gj.dimension() != e) throw DimensionMismatch("substituted polynomials disagree on dimension");
    FreePolynomial out(e);
    for (const auto& [w, c] : p.terms()) {
        FreePolynomial term = FreePolynomial::constant(e, c);
        for (int l : w.letters()) term = poly_mul(term, g[static_cast<std::size_t>(l - 1)]);
        out = poly_add(out, term);
    }
    return out;
}

namespace detail {

inline std::string format_magnitude(double v) { return format_double(std::abs(v)); }

// Renders c as (sign, body). body is empty for a unit coefficient on a non-unit word.
inline std::pair<bool, std::string> format_coefficient(Complex c, bool unit_word) {
    const double re = c.real(), im = c.imag();
    if (im == 0.0) {
        const bool neg = std::signbit(re) && re != 0.0;
        if (!unit_word && std::abs(re) == 1.0) return {neg, ""};
        return {neg, format_magnitude(re)};
    }
    if (re == 0.0) {
        const bool neg = std::signbit(im);
        if (std::abs(im) == 1.0) return {neg, "i"};
        return {neg, format_magnitude(im) + "i"};
    }
    std::string body = "(" + format_double(re) + (std::signbit(im) ? "-" : "+") +
                       format_magnitude(im) + "i)";
    return {false, body};
}

}  // namespace detail

/// Human-readable form accepted back by parse(): "2*z1*z2 - z1 - z2".
inline std::string format(const FreePolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        auto [neg, coeff] = detail::format_coefficient(c, w.empty());
        std::string term = coeff;
        for (int l : w.letters()) {
            if (!term.empty()) term += '*';
            term += 'z' + std::to_string(l);
        }
        if (first) out += neg ? "-" + term : term;
        else out += (neg ? " - " : " + ") + term;
        first = false;
    }
    return out;
}

/// Canonical (length-lex) list of (word, re, im) triples.
inline std::vector<std::tuple<std::string, double, double>> to_triples(const FreePolynomial& p) {
    std::vector<std::tuple<std::string, double, double>> out;
    for (const auto& [w, c] : p.terms()) out.emplace_back(w.to_string(), c.real(), c.imag());
    return out;
}

}  // namespace ncball
