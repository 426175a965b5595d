#pragma once

// Binary forms with a stated degree: B(x,y) = sum c[i] x^i y^(deg-i).
// The stated degree matters projectively; a coefficient vector with vanishing
// top entries encodes roots at infinity rather than a lower-degree object.
// Generic over the coefficient ring so the pencil u*F - t*G (coefficients in
// Z[t]) runs through the same resultant code as plain integer forms.

#include "arithdyn/integers.hpp"
#include "arithdyn/poly.hpp"

#include <string>
#include <vector>

namespace arithdyn {

template <typename T>
T embed_integer(const Integer& n) {
    return T(n);
}
template <>
inline Integer embed_integer<Integer>(const Integer& n) {
    return n;
}

template <typename T>
class BinForm {
public:
    BinForm() : deg_(0), c_(1, RingTraits<T>::zero()) {}
    BinForm(int degree, std::vector<T> coeffs) : deg_(degree), c_(std::move(coeffs)) {
        if (degree < 0 || c_.size() != static_cast<std::size_t>(degree) + 1)
            throw std::invalid_argument("BinForm: coefficient count must be degree + 1");
    }

    // Homogenize p to the stated degree n (>= deg p); missing degree becomes
    // a root at infinity.
    static BinForm homogenize(const Poly<T>& p, int n) {
        if (p.degree() > n) throw std::invalid_argument("BinForm::homogenize: degree exceeds target");
        std::vector<T> c(static_cast<std::size_t>(n) + 1, RingTraits<T>::zero());
        for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(i)] = p.coeff(i);
        return BinForm(n, std::move(c));
    }

    int degree() const { return deg_; }
    const T& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<T>& coeffs() const { return c_; }

    bool all_zero() const {
        for (const auto& a : c_)
            if (!is_zero(a)) return false;
        return true;
    }

    Poly<T> dehomogenized() const {  // B(x, 1)
        return Poly<T>::from_coeffs(c_);
    }
    // Multiplicity of the root at infinity (1:0): stated degree minus x-degree.
    int infinity_multiplicity() const {
        if (all_zero()) throw std::logic_error("BinForm: zero form");
        return deg_ - dehomogenized().degree();
    }

    BinForm derivative_x() const {
        if (deg_ == 0) return BinForm(0, {RingTraits<T>::zero()});
        std::vector<T> r(static_cast<std::size_t>(deg_), RingTraits<T>::zero());
        for (int i = 1; i <= deg_; ++i)
            r[static_cast<std::size_t>(i - 1)] = embed_integer<T>(Integer(i)) * c_[static_cast<std::size_t>(i)];
        return BinForm(deg_ - 1, std::move(r));
    }
    BinForm derivative_y() const {
        if (deg_ == 0) return BinForm(0, {RingTraits<T>::zero()});
        std::vector<T> r(static_cast<std::size_t>(deg_), RingTraits<T>::zero());
        for (int i = 0; i < deg_; ++i)
            r[static_cast<std::size_t>(i)] = embed_integer<T>(Integer(deg_ - i)) * c_[static_cast<std::size_t>(i)];
        return BinForm(deg_ - 1, std::move(r));
    }

    friend BinForm operator*(const BinForm& a, const BinForm& b) {
        std::vector<T> r(static_cast<std::size_t>(a.deg_ + b.deg_) + 1, RingTraits<T>::zero());
        for (int i = 0; i <= a.deg_; ++i)
            for (int j = 0; j <= b.deg_; ++j)
                r[static_cast<std::size_t>(i + j)] =
                    r[static_cast<std::size_t>(i + j)] + a.coeff(i) * b.coeff(j);
        return BinForm(a.deg_ + b.deg_, std::move(r));
    }
    friend BinForm operator+(const BinForm& a, const BinForm& b) {
        if (a.deg_ != b.deg_) throw std::invalid_argument("BinForm: degree mismatch in +");
        std::vector<T> r = a.c_;
        for (int i = 0; i <= a.deg_; ++i) r[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(i)] + b.coeff(i);
        return BinForm(a.deg_, std::move(r));
    }
    friend BinForm operator*(const T& s, const BinForm& a) {
        std::vector<T> r = a.c_;
        for (auto& x : r) x = s * x;
        return BinForm(a.deg_, std::move(r));
    }
    friend bool operator==(const BinForm& a, const BinForm& b) { return a.deg_ == b.deg_ && a.c_ == b.c_; }

    // Substitute two equal-degree forms for (x, y); the workhorse behind
    // composition of maps and Moebius changes of variable.
    BinForm substituted(const BinForm& X, const BinForm& Y) const {
        if (X.degree() != Y.degree()) throw std::invalid_argument("BinForm: substitution degree mismatch");
        int m = X.degree();
        // powers X^i * Y^(deg-i)
        std::vector<BinForm> xp{BinForm(0, {RingTraits<T>::one()})};
        std::vector<BinForm> yp{BinForm(0, {RingTraits<T>::one()})};
        for (int i = 1; i <= deg_; ++i) {
            xp.push_back(xp.back() * X);
            yp.push_back(yp.back() * Y);
        }
        BinForm acc(deg_ * m, std::vector<T>(static_cast<std::size_t>(deg_ * m) + 1, RingTraits<T>::zero()));
        for (int i = 0; i <= deg_; ++i) {
            if (is_zero(c_[static_cast<std::size_t>(i)])) continue;
            acc = acc + c_[static_cast<std::size_t>(i)] * (xp[static_cast<std::size_t>(i)] *
                                                           yp[static_cast<std::size_t>(deg_ - i)]);
        }
        return acc;
    }

    template <typename U, typename F>
    BinForm<U> map_coeffs(F&& f) const {
        std::vector<U> r;
        r.reserve(c_.size());
        for (const auto& x : c_) r.push_back(f(x));
        return BinForm<U>(deg_, std::move(r));
    }

private:
    int deg_;
    std::vector<T> c_;
};

using IntForm = BinForm<Integer>;

// ---------------------------------------------------------------------------
// Resultant of two binary forms with respect to their stated degrees; zero
// exactly when they share a projective root (infinity included).

template <typename T>
T form_resultant(const BinForm<T>& F, const BinForm<T>& G) {
    if (F.all_zero() || G.all_zero()) throw std::invalid_argument("form_resultant: zero form");
    Poly<T> f = F.dehomogenized(), g = G.dehomogenized();
    int m = F.degree(), n = G.degree();
    int drop_f = m - f.degree(), drop_g = n - g.degree();
    if (drop_f > 0 && drop_g > 0) return RingTraits<T>::zero();  // both vanish at (1:0)
    if (drop_f > 0) {
        T r = resultant(f, g);
        T scale = RingTraits<T>::one();
        for (int i = 0; i < drop_f; ++i) scale = scale * g.leading();
        T out = scale * r;
        return ((n * drop_f) % 2) ? RingTraits<T>::zero() - out : out;
    }
    if (drop_g > 0) {
        T r = form_resultant(G, F);
        return ((m * n) % 2) ? RingTraits<T>::zero() - r : r;
    }
    return resultant(f, g);
}

// Discriminant of a binary form of stated degree n: nonzero iff the n
// projective roots (infinity included) are pairwise distinct. Degree <= 1
// returns 1 by convention. Computed as
//   disc = (-1)^(n(n-1)/2) Res(dB/dx, dB/dy) / n^(n-2),
// an identity with integer content, so reduction mod p commutes with it.
template <typename T>
T form_discriminant(const BinForm<T>& B) {
    int n = B.degree();
    if (B.all_zero()) throw std::invalid_argument("form_discriminant: zero form");
    if (n <= 1) return RingTraits<T>::one();
    BinForm<T> bx = B.derivative_x();
    BinForm<T> by = B.derivative_y();
    if (bx.all_zero() || by.all_zero()) return RingTraits<T>::zero();
    T r = form_resultant(bx, by);
    T d = exact_div(r, embed_integer<T>(ipow(Integer(n), static_cast<unsigned long>(n - 2))));
    return ((n * (n - 1) / 2) % 2) ? RingTraits<T>::zero() - d : d;
}

// ---------------------------------------------------------------------------
// Integer-form normalization and root bookkeeping.

inline Integer form_content(const IntForm& B) {
    Integer c = 0;
    for (const auto& a : B.coeffs()) c = boost::multiprecision::gcd(c, a);
    return c;
}

// Divide by content; sign fixed so the highest nonzero coefficient (largest
// power of x) is positive.
inline IntForm primitive_form(const IntForm& B) {
    if (B.all_zero()) throw std::invalid_argument("primitive_form: zero form");
    Integer c = form_content(B);
    for (int i = B.degree(); i >= 0; --i) {
        if (!B.coeff(i).is_zero()) {
            if (B.coeff(i) < 0) c = -c;
            break;
        }
    }
    return B.map_coeffs<Integer>([&](const Integer& a) { return exact_div(a, c); });
}

// Primitive form with the same projective roots, all simple. Stated degree
// shrinks to the number of distinct roots.
inline IntForm squarefree_form(const IntForm& B) {
    if (B.all_zero()) throw std::invalid_argument("squarefree_form: zero form");
    IntPoly f = B.dehomogenized();
    int drop = B.degree() - f.degree();
    IntPoly s = f.degree() >= 1 ? squarefree_part(f) : IntPoly(Integer(1));
    int n = s.degree() + (drop > 0 ? 1 : 0);
    IntForm out = IntForm::homogenize(s, n);  // extra slot = one root at infinity
    return primitive_form(out);
}

// Does the root set of A lie inside the root set of B? Both squarefree
// primitive. (Exact form divisibility over Q.)
inline bool form_divides(const IntForm& A, const IntForm& B) {
    IntPoly a = A.dehomogenized(), b = B.dehomogenized();
    if (A.infinity_multiplicity() > 0 && B.infinity_multiplicity() == 0) return false;
    if (a.degree() < 1) return true;
    if (b.degree() < a.degree()) return false;
    return pseudo_rem(b, a).zero();
}

// Multiset of root multiplicities of a nonzero form (projective roots,
// infinity included); entries sum to the stated degree.
inline std::vector<int> form_multiplicities(const IntForm& B) {
    if (B.all_zero()) throw std::invalid_argument("form_multiplicities: zero form");
    std::vector<int> out;
    IntPoly f = B.dehomogenized();
    int drop = B.degree() - f.degree();
    if (f.degree() >= 1) {
        for (const auto& [factor, mult] : squarefree_decomposition(f))
            for (int i = 0; i < factor.degree(); ++i) out.push_back(mult);
    }
    if (drop > 0) out.push_back(drop);
    std::sort(out.begin(), out.end(), std::greater<int>());
    return out;
}

// Rational projective roots of a form as (numerator, denominator) pairs where
// infinity is (1, 0).
inline std::vector<std::pair<Integer, Integer>> rational_form_roots(const IntForm& B) {
    if (B.all_zero()) throw std::invalid_argument("rational_form_roots: zero form");
    std::vector<std::pair<Integer, Integer>> out;
    IntPoly f = B.dehomogenized();
    if (B.degree() - f.degree() > 0) out.emplace_back(1, 0);
    if (f.degree() >= 1) {
        for (const auto& r : rational_roots(f)) out.emplace_back(numerator(r), denominator(r));
    }
    return out;
}

inline std::string form_str(const IntForm& B, const std::string& xv = "x", const std::string& yv = "y") {
    if (B.all_zero()) return "0";
    std::string out;
    bool first = true;
    for (int i = B.degree(); i >= 0; --i) {
        const Integer& c = B.coeff(i);
        if (c.is_zero()) continue;
        Integer a = boost::multiprecision::abs(c);
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        int j = B.degree() - i;
        std::string mono;
        if (i > 0) mono += xv + (i > 1 ? "^" + std::to_string(i) : "");
        if (j > 0) {
            if (!mono.empty()) mono += "*";
            mono += yv + (j > 1 ? "^" + std::to_string(j) : "");
        }
        if (mono.empty()) {
            out += a.str();
        } else {
            if (a != 1) out += a.str() + "*";
            out += mono;
        }
    }
    return out;
}

}  // namespace arithdyn
