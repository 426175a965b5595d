#pragma once

// Multiprecision complex numerics: Aberth-Ehrlich root finding for the
// squarefree forms the monodromy module consumes. Precision is a template
// parameter; callers climb a fixed ladder of instantiations when a
// computation reports that it ran out of accuracy.

#include "arithdyn/binform.hpp"
#include "arithdyn/integers.hpp"
#include "arithdyn/poly.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace arithdyn {

struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& m) : std::runtime_error(m) {}
};

// Fixed public precision for reported approximations; internal computations
// may run much higher.
using Real50 = boost::multiprecision::cpp_complex_50::value_type;
using Complex50 = boost::multiprecision::cpp_complex_50;

namespace numeric {

template <unsigned Digits>
using ComplexOf = boost::multiprecision::cpp_complex<Digits>;

template <class C>
typename C::value_type to_real(const Integer& a) {
    return typename C::value_type(a);
}

template <class C>
C from_integer(const Integer& a) {
    return C(to_real<C>(a));
}

template <class C>
C from_rational(const Rational& q) {
    return C(typename C::value_type(numerator(q)) / typename C::value_type(denominator(q)));
}

template <class C>
C polar(const typename C::value_type& r, const typename C::value_type& theta) {
    return C(r * cos(theta), r * sin(theta));
}

template <class C>
std::vector<C> complex_coeffs(const IntPoly& f) {
    std::vector<C> out;
    out.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) out.push_back(from_integer<C>(a));
    return out;
}

template <class C>
C eval_poly(const std::vector<C>& c, const C& z) {
    C acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

template <class C>
C eval_poly_derivative(const std::vector<C>& c, const C& z) {
    C acc(0);
    for (std::size_t i = c.size(); i-- > 1;)
        acc = acc * z + C(typename C::value_type(static_cast<long>(i))) * c[i];
    return acc;
}

// All roots of a polynomial with nonzero leading coefficient, by the
// Aberth-Ehrlich simultaneous iteration. Deterministic start configuration.
template <class C>
std::vector<C> poly_roots(std::vector<C> c, int max_sweeps = 400) {
    using R = typename C::value_type;
    while (!c.empty() && abs(c.back()) == 0) c.pop_back();
    if (c.size() <= 1) throw std::invalid_argument("poly_roots: degree must be >= 1");
    int d = static_cast<int>(c.size()) - 1;
    const R eps = std::numeric_limits<R>::epsilon() * 64;

    R radius(1);
    for (int i = 0; i < d; ++i) {
        R q = abs(c[static_cast<std::size_t>(i)]) / abs(c.back());
        if (q > radius) radius = q;
    }
    radius += 1;

    std::vector<C> z(static_cast<std::size_t>(d));
    const R two_pi = 2 * boost::math::constants::pi<R>();
    for (int k = 0; k < d; ++k) {
        R theta = two_pi * R(k) / R(d) + R(2) / R(5);
        z[static_cast<std::size_t>(k)] = polar<C>(radius * R(3) / R(4), theta);
    }

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        R worst(0);
        for (int k = 0; k < d; ++k) {
            C zk = z[static_cast<std::size_t>(k)];
            C p = eval_poly(c, zk);
            C dp = eval_poly_derivative(c, zk);
            if (abs(dp) == 0) {
                z[static_cast<std::size_t>(k)] = zk + C(eps, eps);
                worst = R(1);
                continue;
            }
            C w = p / dp;
            C s(0);
            for (int j = 0; j < d; ++j) {
                if (j == k) continue;
                C diff = zk - z[static_cast<std::size_t>(j)];
                if (abs(diff) == 0) diff = C(eps, eps);
                s += C(1) / diff;
            }
            C denom = C(1) - w * s;
            C step = (abs(denom) == 0) ? w : w / denom;
            z[static_cast<std::size_t>(k)] = zk - step;
            R rel = abs(step) / (R(1) + abs(zk));
            if (rel > worst) worst = rel;
        }
        if (worst < eps) return z;
    }
    throw PrecisionExhausted("poly_roots: Aberth iteration did not settle");
}

// Newton error bound: the disk of radius deg * |p/p'| around an approximate
// simple root contains a true root.
template <class C>
typename C::value_type inclusion_radius(const std::vector<C>& c, const C& z) {
    using R = typename C::value_type;
    C p = eval_poly(c, z);
    C dp = eval_poly_derivative(c, z);
    if (abs(dp) == 0) return R(std::numeric_limits<double>::infinity());
    return R(static_cast<long>(c.size() - 1)) * abs(p / dp);
}

}  // namespace numeric

// ---------------------------------------------------------------------------
// Roots of a squarefree integer form: finite approximations with radii whose
// disks are pairwise disjoint, plus the symbolic root at infinity.

struct FormRoots {
    std::vector<Complex50> finite;
    std::vector<Real50> radii;
    bool includes_infinity = false;
};

namespace numeric {

// Full-precision variant used internally by the monodromy machinery.
template <class C>
struct FormRootsT {
    std::vector<C> finite;
    std::vector<typename C::value_type> radii;
    bool includes_infinity = false;
};

template <class C>
FormRootsT<C> form_roots_t(const IntForm& B) {
    using R = typename C::value_type;
    if (B.all_zero()) throw std::invalid_argument("complex_roots: zero form");
    FormRootsT<C> out;
    out.includes_infinity = B.infinity_multiplicity() > 0;
    IntPoly f = B.dehomogenized();
    if (f.degree() < 1) return out;
    std::vector<C> c = complex_coeffs<C>(f);
    std::vector<C> roots = poly_roots(c);
    std::sort(roots.begin(), roots.end(), [](const C& a, const C& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<R> radii;
    for (const auto& z : roots) radii.push_back(inclusion_radius(c, z));
    // disks must be pairwise disjoint for the approximations to separate roots
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (abs(roots[i] - roots[j]) <= radii[i] + radii[j])
                throw PrecisionExhausted("complex_roots: inclusion disks overlap");
    out.finite = std::move(roots);
    out.radii = std::move(radii);
    return out;
}

template <unsigned Digits>
FormRoots form_roots_at(const IntForm& B) {
    using C = ComplexOf<Digits>;
    FormRootsT<C> r = form_roots_t<C>(B);
    FormRoots out;
    out.includes_infinity = r.includes_infinity;
    for (std::size_t i = 0; i < r.finite.size(); ++i) {
        out.finite.emplace_back(Real50(r.finite[i].real()), Real50(r.finite[i].imag()));
        out.radii.push_back(Real50(r.radii[i]));
    }
    return out;
}

}  // namespace numeric

// Precision ladder entry point. `digits` is a request; the computation runs
// at the next instantiated precision at or above it.
inline FormRoots complex_roots(const IntForm& B, int digits = 50) {
    if (digits <= 50) return numeric::form_roots_at<50>(B);
    if (digits <= 100) return numeric::form_roots_at<100>(B);
    if (digits <= 200) return numeric::form_roots_at<200>(B);
    if (digits <= 400) return numeric::form_roots_at<400>(B);
    if (digits <= 800) return numeric::form_roots_at<800>(B);
    throw std::invalid_argument("complex_roots: precision above 800 digits unsupported");
}

}  // namespace arithdyn
