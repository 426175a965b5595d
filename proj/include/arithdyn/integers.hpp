#pragma once

// Arbitrary-precision integer/rational layer: p-adic valuations, primality,
// integer factorization and small prime enumeration. Everything is exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace arithdyn {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_zero(const Integer& a) { return a.is_zero(); }
inline bool is_zero(const Rational& a) { return a.is_zero(); }

inline int sign_of(const Integer& a) { return a.sign(); }

// Exact integer quotient; the division must be remainder-free.
inline Integer exact_div(const Integer& a, const Integer& b) {
    Integer q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (!r.is_zero()) throw std::logic_error("exact_div: inexact integer division");
    return q;
}

// In Q every nonzero division is exact.
inline Rational exact_div(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::invalid_argument("exact_div: division by zero");
    return a / b;
}

inline Integer ipow(Integer base, unsigned long e) {
    Integer r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Valuation value: an integer or +infinity (the valuation of zero).

class Valuation {
public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation of(long v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    long value() const {
        if (infinite_) throw std::logic_error("Valuation: +infinity has no finite value");
        return value_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return a < b || a == b; }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return b <= a; }

    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return of(a.value_ + b.value_);
    }

    std::string str() const { return infinite_ ? "+inf" : std::to_string(value_); }

private:
    Valuation(bool inf, long v) : infinite_(inf), value_(v) {}
    bool infinite_;
    long value_;
};

// ---------------------------------------------------------------------------
// Primality. Deterministic Miller-Rabin: the base set {2,...,37} decides
// primality for all n < 3.3e24, far beyond anything this toolkit meets.

inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (int q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    Integer d = n - 1;
    unsigned long s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Integer x = boost::multiprecision::powm(Integer(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned long r = 1; r < s; ++r) {
            x = (x * x) % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

inline std::vector<Integer> primes_up_to(long bound) {
    std::vector<Integer> out;
    if (bound < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (long i = 2; i <= bound; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        out.emplace_back(i);
        for (long j = i * i; j >= 0 && j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integer factorization: trial division then Pollard-Brent rho. Deterministic
// (fixed parameter schedule); adequate for discriminants of desk-scale forms.

namespace detail {

inline Integer pollard_brent(const Integer& n, unsigned long c0) {
    // Brent's cycle variant of Pollard rho with increment c0.
    Integer y = 2, c = c0, m = 128;
    Integer g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1) {
        x = y;
        for (Integer i = 0; i < r; ++i) y = (y * y + c) % n;
        Integer k = 0;
        while (k < r && g == 1) {
            ys = y;
            Integer lim = (m < r - k) ? m : r - k;
            for (Integer i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                q = q * boost::multiprecision::abs(x - y) % n;
            }
            g = boost::multiprecision::gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = (ys * ys + c) % n;
            g = boost::multiprecision::gcd(boost::multiprecision::abs(x - ys), n);
        } while (g == 1);
    }
    return g;
}

inline void factor_rec(Integer n, std::map<Integer, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Integer d = n;
    for (unsigned long c = 1; d == n; ++c) d = pollard_brent(n, c);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace detail

// Prime factorization of |n| for n != 0; the unit sign is discarded.
inline std::map<Integer, int> factorize(Integer n) {
    if (n.is_zero()) throw std::invalid_argument("factorize: zero has no factorization");
    n = boost::multiprecision::abs(n);
    std::map<Integer, int> out;
    for (int q : {2, 3, 5, 7, 11, 13}) {
        while (n % q == 0) {
            ++out[Integer(q)];
            n /= q;
        }
    }
    Integer t = 17;
    while (t * t <= n && t < 100000) {
        while (n % t == 0) {
            ++out[t];
            n /= t;
        }
        t += 2;
    }
    if (n > 1) detail::factor_rec(n, out);
    return out;
}

inline std::vector<Integer> prime_divisors(const Integer& n) {
    std::vector<Integer> out;
    if (n.is_zero()) throw std::invalid_argument("prime_divisors: zero");
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------------------
// A residue-field context: a checked prime p.

class PadicContext {
public:
    explicit PadicContext(Integer p) : p_(std::move(p)) {
        if (!is_prime(p_)) throw std::invalid_argument("PadicContext: " + p_.str() + " is not prime");
    }
    const Integer& p() const { return p_; }

    friend bool operator==(const PadicContext& a, const PadicContext& b) { return a.p_ == b.p_; }

private:
    Integer p_;
};

inline Valuation padic_valuation(const Integer& n, const PadicContext& ctx) {
    if (n.is_zero()) return Valuation::infinity();
    Integer m = n;
    long v = 0;
    while (m % ctx.p() == 0) {
        m /= ctx.p();
        ++v;
    }
    return Valuation::of(v);
}

inline Valuation padic_valuation(const Rational& q, const PadicContext& ctx) {
    if (q.is_zero()) return Valuation::infinity();
    Valuation vn = padic_valuation(numerator(q), ctx);
    Valuation vd = padic_valuation(denominator(q), ctx);
    return Valuation::of(vn.value() - vd.value());
}

}  // namespace arithdyn
