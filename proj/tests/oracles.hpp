#pragma once

// Test-only oracles, independent of the production code paths they check:
//  - Sylvester-matrix resultants by exact rational elimination,
//  - the classical polynomial discriminant,
//  - random generators with fixed seeds.

#include <arithdyn/binform.hpp>
#include <arithdyn/integers.hpp>
#include <arithdyn/poly.hpp>
#include <arithdyn/ratmap.hpp>

#include <random>
#include <vector>

namespace oracles {

using arithdyn::Integer;
using arithdyn::IntForm;
using arithdyn::IntPoly;
using arithdyn::Rational;

// Determinant by exact Gaussian elimination over Q.
inline Rational det_rational(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Rational factor = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    return det;
}

// Resultant with respect to STATED degrees (leading zeros allowed), straight
// from the Sylvester matrix.
inline Integer sylvester_resultant(const IntPoly& f, int m, const IntPoly& g, int n) {
    std::vector<std::vector<Rational>> s(static_cast<std::size_t>(m + n),
                                         std::vector<Rational>(static_cast<std::size_t>(m + n), Rational(0)));
    for (int row = 0; row < n; ++row)
        for (int k = 0; k <= m; ++k) s[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + k)] = Rational(f.coeff(m - k));
    for (int row = 0; row < m; ++row)
        for (int k = 0; k <= n; ++k) s[static_cast<std::size_t>(n + row)][static_cast<std::size_t>(row + k)] = Rational(g.coeff(n - k));
    Rational d = det_rational(std::move(s));
    if (denominator(d) != 1) throw std::logic_error("sylvester_resultant: non-integer determinant");
    return numerator(d);
}

inline Integer sylvester_form_resultant(const IntForm& F, const IntForm& G) {
    return sylvester_resultant(F.dehomogenized(), F.degree(), G.dehomogenized(), G.degree());
}

// Classical discriminant of a polynomial with nonzero leading coefficient.
inline Integer poly_discriminant(const IntPoly& f) {
    int d = f.degree();
    if (d < 2) return Integer(1);
    Integer r = sylvester_resultant(f, d, f.derivative(), d - 1);
    Integer q = arithdyn::exact_div(r, f.leading());
    return ((d * (d - 1) / 2) % 2) ? Integer(-q) : q;
}

// ---------------------------------------------------------------------------

struct Rng {
    explicit Rng(unsigned seed) : gen(seed) {}
    std::mt19937 gen;

    long in(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }

    IntPoly poly(int max_deg, long coeff_bound, bool nonzero = true) {
        while (true) {
            int d = static_cast<int>(in(0, max_deg));
            std::vector<Integer> c;
            for (int i = 0; i <= d; ++i) c.emplace_back(in(-coeff_bound, coeff_bound));
            IntPoly p = IntPoly::from_coeffs(std::move(c));
            if (!nonzero || !p.zero()) return p;
        }
    }

    // A random degree-n map with small coefficients.
    arithdyn::RationalMap map(int deg, long coeff_bound) {
        while (true) {
            std::vector<Integer> a, b;
            for (int i = 0; i <= deg; ++i) a.emplace_back(in(-coeff_bound, coeff_bound));
            for (int i = 0; i <= deg; ++i) b.emplace_back(in(-coeff_bound, coeff_bound));
            try {
                IntForm F(deg, a), G(deg, b);
                if (F.all_zero() || G.all_zero()) continue;
                arithdyn::RationalMap phi = arithdyn::RationalMap::from_forms(F, G);
                if (phi.degree() == deg) return phi;
            } catch (const std::exception&) {
                continue;
            }
        }
    }
};

}  // namespace oracles
