#pragma once

// Degree-n endomorphisms of P^1 over Q, stored projectively as a coprime
// pair of integer binary forms with joint content 1. One stored model is the
// v-normalized form at every prime simultaneously.

#include "arithdyn/binform.hpp"
#include "arithdyn/fp.hpp"
#include "arithdyn/integers.hpp"
#include "arithdyn/poly.hpp"

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace arithdyn {

// ---------------------------------------------------------------------------
// Projective rational points (x : y), coprime, canonical sign (y > 0, or
// y == 0 and x > 0).

class ProjPoint {
public:
    static ProjPoint of(Integer x, Integer y) {
        if (x.is_zero() && y.is_zero()) throw std::invalid_argument("ProjPoint: (0:0)");
        Integer g = boost::multiprecision::gcd(x, y);
        x /= g;
        y /= g;
        if (y < 0 || (y.is_zero() && x < 0)) {
            x = -x;
            y = -y;
        }
        return ProjPoint(std::move(x), std::move(y));
    }
    static ProjPoint infinity() { return of(1, 0); }
    static ProjPoint from_rational(const Rational& r) { return of(numerator(r), denominator(r)); }

    const Integer& x() const { return x_; }
    const Integer& y() const { return y_; }
    bool is_infinity() const { return y_.is_zero(); }
    Rational to_rational() const {
        if (is_infinity()) throw std::logic_error("ProjPoint: infinity is not rational-affine");
        return Rational(x_, y_);
    }
    // Multiplicative height: max(|x|, |y|) on the coprime representative.
    Integer height() const { return std::max(boost::multiprecision::abs(x_), boost::multiprecision::abs(y_)); }

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
        return std::tie(a.x_, a.y_) < std::tie(b.x_, b.y_);
    }

    std::string str() const {
        if (is_infinity()) return "inf";
        if (y_ == 1) return x_.str();
        return x_.str() + "/" + y_.str();
    }

private:
    ProjPoint(Integer x, Integer y) : x_(std::move(x)), y_(std::move(y)) {}
    Integer x_, y_;
};

// A point of P^1(F_p): canonical representative with last nonzero coordinate 1.
struct FpPoint {
    Integer x, y;
    static FpPoint of(const Integer& x0, const Integer& y0, const FpContext& F) {
        Integer a = F.norm(x0), b = F.norm(y0);
        if (a.is_zero() && b.is_zero()) throw std::invalid_argument("FpPoint: (0:0)");
        if (!b.is_zero()) {
            Integer s = F.inv(b);
            return FpPoint{F.mul(a, s), Integer(1)};
        }
        return FpPoint{Integer(1), Integer(0)};
    }
    friend bool operator==(const FpPoint& a, const FpPoint& b) { return a.x == b.x && a.y == b.y; }
};

// ---------------------------------------------------------------------------

class Mobius {
public:
    // x -> (a x + b) / (c x + d)
    Mobius(Integer a, Integer b, Integer c, Integer d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        if (det().is_zero()) throw std::invalid_argument("Mobius: singular matrix");
    }
    static Mobius identity() { return Mobius(1, 0, 0, 1); }
    // x -> r + x  for rational r
    static Mobius translation(const Rational& r) {
        return Mobius(denominator(r), numerator(r), 0, denominator(r));
    }
    // x -> u x for nonzero rational u
    static Mobius scaling(const Rational& u) {
        if (u.is_zero()) throw std::invalid_argument("Mobius: zero scaling");
        return Mobius(numerator(u), 0, 0, denominator(u));
    }

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    const Integer& c() const { return c_; }
    const Integer& d() const { return d_; }
    Integer det() const { return a_ * d_ - b_ * c_; }

    Mobius inverse() const { return Mobius(d_, -b_, -c_, a_); }  // adjugate; same map
    friend Mobius operator*(const Mobius& m, const Mobius& n) {  // composition m after n
        return Mobius(m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
                      m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_);
    }

    bool integral_unit_at(const PadicContext& ctx) const { return det() % ctx.p() != 0; }

    ProjPoint apply(const ProjPoint& P) const {
        return ProjPoint::of(a_ * P.x() + b_ * P.y(), c_ * P.x() + d_ * P.y());
    }

private:
    Integer a_, b_, c_, d_;
};

// ---------------------------------------------------------------------------
// The reduction of a map modulo p: coprime pair over F_p after cancelling the
// common factor; reduced_degree is its degree as a map (0 for constants).

struct ReducedMap {
    FpContext field;
    FpForm num, den;  // canonical joint scaling; equal stated degree
    int reduced_degree;

    bool constant() const { return reduced_degree == 0; }

    FpPoint evaluate(const FpPoint& P) const {
        Integer fx = num.eval(P.x, P.y, field);
        Integer gx = den.eval(P.x, P.y, field);
        return FpPoint::of(fx, gx, field);
    }
};

// Separability of the reduced map: d(f/g)/dx != 0, i.e. f'g - fg' nonzero
// over F_p. (A constant reduced map is inseparable by convention.)
inline bool separable_test(const ReducedMap& R) {
    const FpContext& F = R.field;
    FpPoly f = R.num.dehomogenized(), g = R.den.dehomogenized();
    FpPoly w = FpPoly::sub(FpPoly::mul(f.derivative(F), g, F), FpPoly::mul(f, g.derivative(F), F), F);
    return !w.zero();
}

// ---------------------------------------------------------------------------

inline constexpr int kDefaultDegreeCap = 512;

class RationalMap {
public:
    // Normalizing constructor: cancels any common factor of the two forms,
    // divides out the joint content and fixes the sign. Inputs must have equal
    // stated degree.
    static RationalMap from_forms(IntForm F, IntForm G) { return make(std::move(F), std::move(G), true); }

    // For internally-produced pairs that are coprime by construction
    // (composition, change of variables); asserts instead of reducing.
    static RationalMap from_coprime_forms(IntForm F, IntForm G) {
        return make(std::move(F), std::move(G), false);
    }

    int degree() const { return num_.degree(); }
    const IntForm& numerator_form() const { return num_; }
    const IntForm& denominator_form() const { return den_; }
    const Integer& homogeneous_resultant() const { return resultant_; }

    friend bool operator==(const RationalMap& a, const RationalMap& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    ProjPoint evaluate(const ProjPoint& P) const {
        Integer fx = eval_form(num_, P), gx = eval_form(den_, P);
        return ProjPoint::of(std::move(fx), std::move(gx));
    }

    ReducedMap reduce(const PadicContext& ctx) const {
        FpContext F(ctx);
        FpForm fn = FpForm::reduce(num_, F);
        FpForm fd = FpForm::reduce(den_, F);
        if (fn.all_zero() || fd.all_zero()) {
            // the whole map collapses to the constant 0 or infinity
            FpForm zero(0, {Integer(0)}), one(0, {Integer(1)});
            return ReducedMap{F, fn.all_zero() ? zero : one, fn.all_zero() ? one : zero, 0};
        }
        FpForm d = FpForm::gcd(fn, fd, F);
        if (d.degree() > 0) {
            fn = FpForm::div_exact(fn, d, F);
            fd = FpForm::div_exact(fd, d, F);
        }
        // joint canonical scaling: highest nonzero coefficient of (num, den) = 1
        Integer s = 0;
        for (int i = fn.degree(); i >= 0 && s.is_zero(); --i)
            if (!fn.coeff(i).is_zero()) s = fn.coeff(i);
        for (int i = fd.degree(); i >= 0 && s.is_zero(); --i)
            if (!fd.coeff(i).is_zero()) s = fd.coeff(i);
        Integer inv = F.inv(s);
        auto scale = [&](const FpForm& A) {
            std::vector<Integer> c;
            c.reserve(A.coeffs().size());
            for (const auto& a : A.coeffs()) c.push_back(F.mul(inv, a));
            return FpForm(A.degree(), std::move(c));
        };
        int rd = fn.degree();
        return ReducedMap{F, scale(fn), scale(fd), rd};
    }

    std::string str() const {
        return "(" + form_str(num_) + ") / (" + form_str(den_) + ")";
    }

private:
    RationalMap(IntForm F, IntForm G, Integer r)
        : num_(std::move(F)), den_(std::move(G)), resultant_(std::move(r)) {}

    static Integer eval_form(const IntForm& B, const ProjPoint& P) {
        Integer acc = 0, xp = 1;
        std::vector<Integer> yp(static_cast<std::size_t>(B.degree()) + 1, Integer(1));
        for (int j = 1; j <= B.degree(); ++j) yp[static_cast<std::size_t>(j)] = yp[static_cast<std::size_t>(j - 1)] * P.y();
        for (int i = 0; i <= B.degree(); ++i) {
            acc += B.coeff(i) * xp * yp[static_cast<std::size_t>(B.degree() - i)];
            xp *= P.x();
        }
        return acc;
    }

    static RationalMap make(IntForm F, IntForm G, bool allow_reduce) {
        if (F.degree() != G.degree()) throw std::invalid_argument("RationalMap: form degrees differ");
        if (F.all_zero() || G.all_zero()) throw std::invalid_argument("RationalMap: zero form");
        IntPoly f = F.dehomogenized(), g = G.dehomogenized();
        IntPoly common = gcd_poly(f, g);
        int drop = std::min(F.infinity_multiplicity(), G.infinity_multiplicity());
        if (common.degree() > 0 || drop > 0) {
            if (!allow_reduce) throw std::logic_error("RationalMap: expected coprime forms");
            if (common.degree() > 0) {
                f = exact_rat_quotient(f, common);
                g = exact_rat_quotient(g, common);
            }
            int n = F.degree() - common.degree() - drop;
            if (n < std::max(f.degree(), g.degree()))
                throw std::logic_error("RationalMap: degree bookkeeping error");
            F = IntForm::homogenize(f, n);
            G = IntForm::homogenize(g, n);
        }
        int n = F.degree();
        if (n < 1) throw std::invalid_argument("RationalMap: constant map");
        // joint content and sign
        Integer c = boost::multiprecision::gcd(form_content(F), form_content(G));
        Integer lead = 0;
        for (int i = n; i >= 0 && lead.is_zero(); --i)
            if (!F.coeff(i).is_zero()) lead = F.coeff(i);
        for (int i = n; i >= 0 && lead.is_zero(); --i)
            if (!G.coeff(i).is_zero()) lead = G.coeff(i);
        if (lead < 0) c = -c;
        F = F.map_coeffs<Integer>([&](const Integer& a) { return exact_div(a, c); });
        G = G.map_coeffs<Integer>([&](const Integer& a) { return exact_div(a, c); });
        Integer res = form_resultant(F, G);
        if (res.is_zero()) throw std::logic_error("RationalMap: forms share a root after reduction");
        return RationalMap(std::move(F), std::move(G), std::move(res));
    }

    static IntPoly exact_rat_quotient(const IntPoly& a, const IntPoly& d) {
        RatPoly q = exact_div(to_rational_poly(a), to_rational_poly(d));
        return q.map_coeffs<Integer>([](const Rational& x) {
            if (denominator(x) != 1) throw std::logic_error("RationalMap: non-integral quotient");
            return numerator(x);
        });
    }

    IntForm num_, den_;
    Integer resultant_;
};

// ---------------------------------------------------------------------------
// Good-reduction tests and map algebra.

// Simple good reduction: the reduced map keeps full degree. Decided by the
// resultant valuation and cross-checked against the reduced degree.
inline bool sgr_test(const RationalMap& phi, const PadicContext& ctx) {
    bool by_resultant = padic_valuation(phi.homogeneous_resultant(), ctx) == Valuation::of(0);
    bool by_degree = phi.reduce(ctx).reduced_degree == phi.degree();
    if (by_resultant != by_degree)
        throw std::logic_error("sgr_test: resultant and reduced-degree routes disagree");
    return by_resultant;
}

// The finitely many primes where simple good reduction fails.
inline std::vector<Integer> bad_sgr_primes(const RationalMap& phi) {
    const Integer& r = phi.homogeneous_resultant();
    if (boost::multiprecision::abs(r) == 1) return {};
    return prime_divisors(r);
}

inline RationalMap compose(const RationalMap& outer, const RationalMap& inner,
                           int degree_cap = kDefaultDegreeCap) {
    long prod = static_cast<long>(outer.degree()) * inner.degree();
    if (prod > degree_cap) throw std::length_error("compose: degree cap exceeded");
    IntForm F = outer.numerator_form().substituted(inner.numerator_form(), inner.denominator_form());
    IntForm G = outer.denominator_form().substituted(inner.numerator_form(), inner.denominator_form());
    return RationalMap::from_coprime_forms(std::move(F), std::move(G));
}

inline RationalMap iterate(const RationalMap& phi, int k, int degree_cap = kDefaultDegreeCap) {
    if (k < 1) throw std::invalid_argument("iterate: k must be >= 1");
    RationalMap out = phi;
    for (int i = 1; i < k; ++i) out = compose(out, phi, degree_cap);
    return out;
}

// phi o A (the equivalence move: source change of variables).
inline RationalMap conjugate_source(const RationalMap& phi, const Mobius& A) {
    IntForm X(1, {A.b(), A.a()});  // a*x + b*y
    IntForm Y(1, {A.d(), A.c()});  // c*x + d*y
    return RationalMap::from_coprime_forms(phi.numerator_form().substituted(X, Y),
                                           phi.denominator_form().substituted(X, Y));
}

// A o phi (target change of variables).
inline RationalMap postcompose(const RationalMap& phi, const Mobius& A) {
    const IntForm& F = phi.numerator_form();
    const IntForm& G = phi.denominator_form();
    IntForm num = A.a() * F + A.b() * G;
    IntForm den = A.c() * F + A.d() * G;
    return RationalMap::from_coprime_forms(std::move(num), std::move(den));
}

// f^{-1} o phi o f: the dynamical conjugation.
inline RationalMap conjugate(const RationalMap& phi, const Mobius& f) {
    return postcompose(conjugate_source(phi, f), f.inverse());
}

inline FpPoint evaluate_reduced(const ReducedMap& R, const FpPoint& P) { return R.evaluate(P); }

// Composition of two reduced maps over the same residue field, normalized the
// same way reduce() normalizes (common factor cancelled, canonical scaling).
inline ReducedMap compose_reduced(const ReducedMap& outer, const ReducedMap& inner) {
    const FpContext& F = outer.field;
    if (F.p() != inner.field.p()) throw std::invalid_argument("compose_reduced: different fields");
    if (outer.constant() || inner.constant())
        throw std::invalid_argument("compose_reduced: constant reduced map");
    FpForm fn = outer.num.substituted(inner.num, inner.den, F);
    FpForm fd = outer.den.substituted(inner.num, inner.den, F);
    FpForm d = FpForm::gcd(fn, fd, F);
    if (d.degree() > 0) {
        fn = FpForm::div_exact(fn, d, F);
        fd = FpForm::div_exact(fd, d, F);
    }
    Integer s = 0;
    for (int i = fn.degree(); i >= 0 && s.is_zero(); --i)
        if (!fn.coeff(i).is_zero()) s = fn.coeff(i);
    for (int i = fd.degree(); i >= 0 && s.is_zero(); --i)
        if (!fd.coeff(i).is_zero()) s = fd.coeff(i);
    Integer inv = F.inv(s);
    auto scale = [&](const FpForm& A) {
        std::vector<Integer> c;
        c.reserve(A.coeffs().size());
        for (const auto& a : A.coeffs()) c.push_back(F.mul(inv, a));
        return FpForm(A.degree(), std::move(c));
    };
    return ReducedMap{F, scale(fn), scale(fd), fn.degree()};
}

}  // namespace arithdyn
