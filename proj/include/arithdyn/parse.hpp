#pragma once

// Map-expression parser. Grammar: integer literals, the variable x, operators
// + - * / ^ (non-negative integer exponents), parentheses; whitespace is
// ignored. The expression is evaluated in Q(x) and normalized, so a single
// top-level / (as in "(2*x^2+1)/x") and any other rational expression both
// land on the same canonical projective model.

#include "arithdyn/poly.hpp"
#include "arithdyn/ratmap.hpp"

#include <cctype>
#include <string>
#include <utility>

namespace arithdyn {

struct ParseError : std::runtime_error {
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          message_only(message),
          position(position) {}
    std::string message_only;
    std::size_t position;
};

namespace detail {

struct RatFunc {
    RatPoly num, den;  // den never the zero polynomial
};

class MapParser {
public:
    MapParser(const std::string& text, int degree_cap) : s_(text), cap_(degree_cap) {}

    RatFunc parse() {
        RatFunc v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    void check_degree(const RatFunc& v) const {
        if (v.num.degree() > cap_ || v.den.degree() > cap_)
            throw ParseError("degree cap exceeded", pos_);
    }

    static RatFunc add(const RatFunc& a, const RatFunc& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    static RatFunc negate(const RatFunc& a) { return {-a.num, a.den}; }
    static RatFunc mul(const RatFunc& a, const RatFunc& b) { return {a.num * b.num, a.den * b.den}; }

    RatFunc expr() {
        RatFunc v = eat('-') ? negate(term()) : term();
        while (true) {
            if (eat('+')) {
                v = add(v, term());
            } else if (eat('-')) {
                v = add(v, negate(term()));
            } else {
                return v;
            }
            check_degree(v);
        }
    }

    RatFunc term() {
        RatFunc v = factor();
        while (true) {
            if (eat('*')) {
                v = mul(v, factor());
            } else if (eat('/')) {
                std::size_t at = pos_;
                RatFunc d = factor();
                if (d.num.zero()) throw ParseError("division by the zero function", at);
                v = mul(v, RatFunc{d.den, d.num});
            } else {
                return v;
            }
            check_degree(v);
        }
    }

    RatFunc factor() {
        if (eat('-')) return negate(factor());
        if (eat('+')) return factor();
        RatFunc v = primary();
        while (eat('^')) {
            long e = integer_literal("exponent expected after '^'");
            if (e < 0) fail("negative exponent");
            if (e * std::max<long>(1, std::max(v.num.degree(), v.den.degree())) > cap_)
                fail("degree cap exceeded");
            RatFunc r{RatPoly(Rational(1)), RatPoly(Rational(1))};
            for (long i = 0; i < e; ++i) r = mul(r, v);
            v = r;
        }
        return v;
    }

    RatFunc primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatFunc v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == 'x') {
            ++pos_;
            return {RatPoly{Rational(0), Rational(1)}, RatPoly(Rational(1))};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Integer n(s_.substr(start, pos_ - start));
            return {RatPoly(Rational(n)), RatPoly(Rational(1))};
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    long integer_literal(const std::string& msg) {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail(msg);
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string lit = s_.substr(start, pos_ - start);
        if (lit.size() > 6) fail("exponent too large");
        return std::stol(lit);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int cap_;
};

}  // namespace detail

// Parse a map expression into the canonical projective model. Constant maps
// are rejected; a non-coprime numerator/denominator is silently reduced.
inline RationalMap parse_map(const std::string& text, int degree_cap = kDefaultDegreeCap) {
    detail::MapParser parser(text, degree_cap);
    detail::RatFunc v = parser.parse();
    if (v.num.zero()) throw ParseError("map is the constant 0", 0);
    // joint denominator clearing keeps the pair's projective class
    Integer lcm_all = 1;
    for (const auto& q : v.num.coeffs()) lcm_all = boost::multiprecision::lcm(lcm_all, denominator(q));
    for (const auto& q : v.den.coeffs()) lcm_all = boost::multiprecision::lcm(lcm_all, denominator(q));
    auto clear = [&](const RatPoly& p) {
        return p.map_coeffs<Integer>(
            [&](const Rational& q) { return Integer(numerator(q) * (lcm_all / denominator(q))); });
    };
    IntPoly a = clear(v.num), b = clear(v.den);
    IntPoly g = gcd_poly(a, b);
    if (g.degree() > 0) {
        // g is primitive, so both quotients stay integral; the pair keeps its
        // relative scale (joint content is handled by from_forms).
        a = exact_div(a, g);
        b = exact_div(b, g);
    }
    int n = std::max(a.degree(), b.degree());
    if (n < 1) throw ParseError("map is constant", 0);
    return RationalMap::from_forms(IntForm::homogenize(a, n), IntForm::homogenize(b, n));
}

}  // namespace arithdyn
