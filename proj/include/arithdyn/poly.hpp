#pragma once

// Dense univariate polynomials over an exact coefficient ring. The same
// template serves Z[x] (Integer coefficients), Q[x] (Rational) and the
// bivariate case Z[t][x] (Poly<Integer> coefficients), which is what the
// pencil-discriminant and pushforward resultants need.
//
// Resultants use the subresultant PRS, so every verdict downstream is an
// exact integer statement. Gcd/squarefree live here for Integer coefficients.

#include "arithdyn/integers.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <utility>
#include <vector>

namespace arithdyn {

template <typename T>
struct RingTraits {
    static T zero() { return T(0); }
    static T one() { return T(1); }
};

template <typename T>
class Poly {
public:
    Poly() = default;
    explicit Poly(T constant) {
        if (!is_zero(constant)) c_.push_back(std::move(constant));
    }
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Poly from_coeffs(std::vector<T> coeffs) {
        Poly p;
        p.c_ = std::move(coeffs);
        p.trim();
        return p;
    }
    static Poly monomial(T coeff, int deg) {
        Poly p;
        if (!is_zero(coeff)) {
            p.c_.assign(static_cast<std::size_t>(deg) + 1, RingTraits<T>::zero());
            p.c_.back() = std::move(coeff);
        }
        return p;
    }

    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }

    const T& coeff(int i) const {
        static const T k_zero = RingTraits<T>::zero();
        if (i < 0 || i >= static_cast<int>(c_.size())) return k_zero;
        return c_[static_cast<std::size_t>(i)];
    }
    const T& leading() const {
        if (zero()) throw std::logic_error("Poly: zero polynomial has no leading coefficient");
        return c_.back();
    }
    const std::vector<T>& coeffs() const { return c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), RingTraits<T>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return from_coeffs(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<T> r = a.c_;
        for (auto& x : r) x = RingTraits<T>::zero() - x;
        return from_coeffs(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.zero() || b.zero()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, RingTraits<T>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return from_coeffs(std::move(r));
    }
    friend Poly operator*(const T& s, const Poly& a) {
        std::vector<T> r = a.c_;
        for (auto& x : r) x = s * x;
        return from_coeffs(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly shifted(int k) const {  // multiply by x^k
        if (zero()) return Poly();
        std::vector<T> r(static_cast<std::size_t>(k), RingTraits<T>::zero());
        r.insert(r.end(), c_.begin(), c_.end());
        return from_coeffs(std::move(r));
    }

    Poly derivative() const {
        if (degree() < 1) return Poly();
        std::vector<T> r(c_.size() - 1, RingTraits<T>::zero());
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = T(static_cast<long>(i)) * c_[i];
        return from_coeffs(std::move(r));
    }

    // Horner evaluation; U must be constructible from T and from int.
    template <typename U>
    U eval(const U& x) const {
        U acc = U(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
        return acc;
    }

    template <typename U, typename F>
    Poly<U> map_coeffs(F&& f) const {
        std::vector<U> r;
        r.reserve(c_.size());
        for (const auto& x : c_) r.push_back(f(x));
        return Poly<U>::from_coeffs(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;  // c_[i] = coefficient of x^i; empty means zero
};

template <typename T>
bool is_zero(const Poly<T>& p) {
    return p.zero();
}

template <typename T>
struct RingTraits<Poly<T>> {
    static Poly<T> zero() { return Poly<T>(); }
    static Poly<T> one() { return Poly<T>(RingTraits<T>::one()); }
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;

// ---------------------------------------------------------------------------
// Division machinery over a generic exact ring.

// Pseudo-remainder: returns R with lc(B)^(deg A - deg B + 1) * A = Q*B + R.
template <typename T>
Poly<T> pseudo_rem(const Poly<T>& A, const Poly<T>& B) {
    if (B.zero()) throw std::invalid_argument("pseudo_rem: division by zero polynomial");
    Poly<T> R = A;
    const T& d = B.leading();
    int e = A.degree() - B.degree() + 1;
    if (e < 0) e = 0;  // deg A < deg B: R = d^0 * A
    while (!R.zero() && R.degree() >= B.degree()) {
        Poly<T> s = Poly<T>::monomial(R.leading(), R.degree() - B.degree());
        R = d * R - s * B;
        --e;
    }
    T scale = RingTraits<T>::one();
    for (; e > 0; --e) scale = scale * d;
    return scale * R;
}

// Exact polynomial division: A = Q*B must hold in R[x]; throws otherwise.
template <typename T>
Poly<T> exact_div(const Poly<T>& A, const Poly<T>& B) {
    if (B.zero()) throw std::invalid_argument("exact_div: division by zero polynomial");
    if (A.zero()) return Poly<T>();
    if (A.degree() < B.degree()) throw std::logic_error("exact_div: inexact polynomial division");
    std::vector<T> q(static_cast<std::size_t>(A.degree() - B.degree()) + 1, RingTraits<T>::zero());
    Poly<T> R = A;
    while (!R.zero() && R.degree() >= B.degree()) {
        T qc = exact_div(R.leading(), B.leading());
        int k = R.degree() - B.degree();
        q[static_cast<std::size_t>(k)] = qc;
        R = R - Poly<T>::monomial(std::move(qc), k) * B;
    }
    if (!R.zero()) throw std::logic_error("exact_div: inexact polynomial division");
    return Poly<T>::from_coeffs(std::move(q));
}

// Divide every coefficient by a ring scalar (exactly).
template <typename T>
Poly<T> exact_div_scalar(const Poly<T>& A, const T& s) {
    return A.template map_coeffs<T>([&](const T& c) { return exact_div(c, s); });
}

// ---------------------------------------------------------------------------
// Resultant by subresultant PRS (integer-exact over any exact ring with
// exact division). Res(A, B) with respect to the actual degrees of A and B.

template <typename T>
T resultant(const Poly<T>& A0, const Poly<T>& B0) {
    if (A0.zero() || B0.zero()) throw std::invalid_argument("resultant: zero polynomial");
    Poly<T> A = A0, B = B0;
    bool negate = false;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if ((A.degree() & 1) && (B.degree() & 1)) negate = !negate;
    }
    if (B.degree() == 0) {
        T r = RingTraits<T>::one();
        for (int i = 0; i < A.degree(); ++i) r = r * B.leading();
        return negate ? RingTraits<T>::zero() - r : r;
    }
    T g = RingTraits<T>::one();
    T h = RingTraits<T>::one();
    while (true) {
        int da = A.degree(), db = B.degree();
        int delta = da - db;
        if ((da & 1) && (db & 1)) negate = !negate;
        Poly<T> R = pseudo_rem(A, B);
        A = B;
        T divisor = g;
        for (int i = 0; i < delta; ++i) divisor = divisor * h;
        B = R.zero() ? Poly<T>() : exact_div_scalar(R, divisor);
        if (B.zero()) return RingTraits<T>::zero();  // common factor
        g = A.leading();
        if (delta > 0) {
            T gd = RingTraits<T>::one();
            for (int i = 0; i < delta; ++i) gd = gd * g;
            T hd = RingTraits<T>::one();
            for (int i = 0; i < delta - 1; ++i) hd = hd * h;
            h = exact_div(gd, hd);
        }
        if (B.degree() == 0) {
            int d = A.degree();
            T bn = RingTraits<T>::one();
            for (int i = 0; i < d; ++i) bn = bn * B.leading();
            T hd = RingTraits<T>::one();
            for (int i = 0; i < d - 1; ++i) hd = hd * h;
            T res = exact_div(bn, hd);
            return negate ? RingTraits<T>::zero() - res : res;
        }
    }
}

// ---------------------------------------------------------------------------
// Integer-coefficient specifics: content, primitive part, gcd, squarefree.

inline Integer content(const IntPoly& f) {
    Integer c = 0;
    for (const auto& a : f.coeffs()) c = boost::multiprecision::gcd(c, a);
    return c;
}

// Primitive part normalized to positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& f) {
    if (f.zero()) return f;
    Integer c = content(f);
    if (f.leading() < 0) c = -c;
    return exact_div_scalar(f, c);
}

// Primitive gcd over Q, normalized to a primitive integer polynomial with
// positive leading coefficient. gcd(f, 0) = primitive part of f.
inline IntPoly gcd_poly(const IntPoly& f0, const IntPoly& g0) {
    if (f0.zero() && g0.zero()) throw std::invalid_argument("gcd_poly: both arguments zero");
    if (f0.zero()) return primitive_part(g0);
    if (g0.zero()) return primitive_part(f0);
    IntPoly A = primitive_part(f0), B = primitive_part(g0);
    if (A.degree() < B.degree()) std::swap(A, B);
    while (!B.zero()) {
        IntPoly R = primitive_part(pseudo_rem(A, B));
        A = B;
        B = R;
    }
    IntPoly g = primitive_part(A);
    if (g.degree() == 0) return IntPoly(Integer(1));
    return g;
}

// Primitive squarefree part: same roots, all with multiplicity one.
inline IntPoly squarefree_part(const IntPoly& f) {
    if (f.zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
    IntPoly p = primitive_part(f);
    if (p.degree() < 1) return IntPoly(Integer(1));
    IntPoly g = gcd_poly(p, p.derivative());
    if (g.degree() == 0) return p;
    return primitive_part(exact_div(p, g));
}

inline RatPoly to_rational_poly(const IntPoly& p) {
    return p.map_coeffs<Rational>([](const Integer& a) { return Rational(a); });
}

// Clear denominators and normalize: the primitive integer polynomial with the
// same roots and positive leading coefficient.
inline IntPoly to_primitive_int_poly(const RatPoly& p) {
    Integer l = 1;
    for (const auto& q : p.coeffs()) l = boost::multiprecision::lcm(l, denominator(q));
    return primitive_part(p.map_coeffs<Integer>(
        [&](const Rational& q) { return Integer(numerator(q) * (l / denominator(q))); }));
}

// Yun squarefree decomposition of a nonzero polynomial: list of (factor,
// multiplicity) with pairwise-coprime squarefree primitive factors; degree-0
// factors are omitted and the input's sign/content is discarded.
inline std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f0) {
    if (f0.zero()) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<IntPoly, int>> out;
    IntPoly f = primitive_part(f0);
    if (f.degree() < 1) return out;
    RatPoly G = to_rational_poly(gcd_poly(f, f.derivative()));
    RatPoly W = exact_div(to_rational_poly(f), G);
    RatPoly Y = exact_div(to_rational_poly(f.derivative()), G);
    RatPoly Z = Y - W.derivative();
    int k = 1;
    while (W.degree() > 0) {
        IntPoly wi = to_primitive_int_poly(W);
        IntPoly gi = Z.zero() ? wi : gcd_poly(wi, to_primitive_int_poly(Z));
        if (gi.degree() > 0) out.emplace_back(gi, k);
        RatPoly Gq = to_rational_poly(gi);
        W = exact_div(W, Gq);
        Y = exact_div(Z, Gq);
        Z = Y - W.derivative();
        ++k;
    }
    return out;
}

// All rational roots of a nonzero integer polynomial, each listed once.
inline std::vector<Rational> rational_roots(const IntPoly& f0) {
    if (f0.zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    std::vector<Rational> out;
    IntPoly f = primitive_part(f0);
    if (f.degree() < 1) return out;
    // strip x^k
    int k = 0;
    while (is_zero(f.coeff(0))) {
        std::vector<Integer> shifted(f.coeffs().begin() + 1, f.coeffs().end());
        f = IntPoly::from_coeffs(std::move(shifted));
        ++k;
    }
    if (k > 0) out.emplace_back(0);
    if (f.degree() < 1) return out;
    auto divisors = [](const Integer& n) {
        std::vector<Integer> ds{1};
        for (const auto& [p, e] : factorize(n)) {
            std::size_t m = ds.size();
            Integer pe = 1;
            for (int i = 1; i <= e; ++i) {
                pe *= p;
                for (std::size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pe);
            }
        }
        return ds;
    };
    std::vector<Integer> num = divisors(f.coeff(0));
    std::vector<Integer> den = divisors(f.leading());
    for (const auto& a : num) {
        for (const auto& b : den) {
            for (int s : {1, -1}) {
                Rational r(s * a, b);
                if (f.eval<Rational>(r).is_zero()) {
                    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <typename T>
std::string poly_str(const Poly<T>& p, const std::string& var = "x") {
    if (p.zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const T& c = p.coeff(i);
        if (is_zero(c)) continue;
        std::ostringstream cs;
        cs << c;
        std::string s = cs.str();
        bool neg = !s.empty() && s[0] == '-';
        if (neg) s = s.substr(1);
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool unit = (s == "1");
        if (i == 0) {
            os << s;
        } else {
            if (!unit) os << s << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace arithdyn
