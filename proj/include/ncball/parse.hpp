#pragma once

/**
 * @file parse.hpp
 * @brief Recursive-descent parser for free nc polynomial expressions.
 *
 * Grammar (whitespace ignored between tokens):
 *
 *     expr    := term (('+' | '-') term)*
 *     term    := unary ('*' unary)*
 *     unary   := ('+' | '-') unary | power
 *     power   := atom ('^' integer)?
 *     atom    := number ['i'] | 'i' | 'z' integer | '(' expr ')'
 *
 * `^k` is the k-fold nc product of its base, so (z1*z2)^2 = z1*z2*z1*z2.
 * Products must be written with '*'; juxtaposition is a syntax error.
 */

#include "ncball/freealg.hpp"

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>

namespace ncball {

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, int d) : text_(text), d_(d) {}

    FreePolynomial parse() {
        skip_ws();
        if (at_end()) fail("empty expression");
        FreePolynomial result = parse_expr();
        skip_ws();
        if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    FreePolynomial parse_expr() {
        FreePolynomial acc = parse_term();
        while (true) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-') return acc;
            ++pos_;
            FreePolynomial rhs = parse_term();
            acc = c == '+' ? poly_add(acc, rhs) : poly_add(acc, poly_scale(-1.0, rhs));
        }
    }

    FreePolynomial parse_term() {
        FreePolynomial acc = parse_unary();
        while (true) {
            skip_ws();
            const char c = peek();
            if (c == '*') {
                ++pos_;
                acc = poly_mul(acc, parse_unary());
                continue;
            }
            if (c == 'z' || c == 'Z' || c == '(' || c == 'i' || c == '.' ||
                std::isdigit(static_cast<unsigned char>(c)))
                fail("implicit multiplication is not allowed; use '*'");
            return acc;
        }
    }

    FreePolynomial parse_unary() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return poly_scale(-1.0, parse_unary());
        }
        if (peek() == '+') {
            ++pos_;
            return parse_unary();
        }
        return parse_power();
    }

    FreePolynomial parse_power() {
        FreePolynomial base = parse_atom();
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        if (peek() == '-') fail("negative exponent");
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a nonnegative integer exponent");
        const unsigned k = static_cast<unsigned>(parse_integer());
        skip_ws();
        if (peek() == '^') fail("chained exponents are ambiguous; parenthesize");
        return poly_pow(base, k);
    }

    long parse_integer() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ - start > 9) {
            pos_ = start;
            fail("integer too large");
        }
        return std::strtol(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr, 10);
    }

    FreePolynomial parse_atom() {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            FreePolynomial inner = parse_expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (c == 'z' || c == 'Z') {
            const std::size_t start = pos_;
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index after 'z'");
            const long j = parse_integer();
            if (j < 1 || j > d_) {
                pos_ = start;
                fail("variable z" + std::to_string(j) + " outside z1..z" + std::to_string(d_));
            }
            return FreePolynomial::variable(d_, static_cast<int>(j));
        }
        if (c == 'i') {
            ++pos_;
            return FreePolynomial::constant(d_, Complex(0.0, 1.0));
        }
        if (c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            const double v = parse_number();
            if (peek() == 'i') {
                ++pos_;
                return FreePolynomial::constant(d_, Complex(0.0, v));
            }
            return FreePolynomial::constant(d_, Complex(v, 0.0));
        }
        if (at_end()) fail("unexpected end of expression");
        fail(std::string("unexpected '") + c + "'");
    }

    double parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_, ++n;
            return n;
        };
        std::size_t mantissa = digits();
        if (peek() == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) fail("malformed number");
        if (peek() == 'e' || peek() == 'E') {
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (digits() == 0) fail("malformed exponent in number");
        }
        return std::strtod(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr);
    }

    std::string_view text_;
    int d_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression in the variables z1..zd into canonical word form.
inline FreePolynomial parse(std::string_view text, int d) {
    if (d < 1) throw DomainError("dimension must be positive");
    return detail::PolyParser(text, d).parse();
}

/// Parses a single complex literal expression such as "0.5-2i" (no variables).
inline Complex parse_complex(std::string_view text) {
    const FreePolynomial p = parse(text, 1);
    if (p.degree() > 0) throw ParseError("expected a complex constant", 0);
    return p.coefficient(Word(1));
}

}  // namespace ncball
