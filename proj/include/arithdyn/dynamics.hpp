#pragma once

// Orbits, the exact escape certificate, postcritical-set stabilization, the
// PCF decision, and the finitely-critical bad-prime set.

#include "arithdyn/ramification.hpp"
#include "arithdyn/ratmap.hpp"
#include "arithdyn/reduction.hpp"

#include <map>
#include <optional>
#include <vector>

namespace arithdyn {

// ---------------------------------------------------------------------------
// Escape bound. From the Bezout identities
//   A1 F + B1 G = R x^(2n-1),   A2 F + B2 G = R y^(2n-1)
// (A_i, B_i integer forms of degree n-1, R the homogeneous resultant) one
// gets H(phi(P)) >= H(P)^n / K with K = max_i (|A_i|_1 + |B_i|_1), so any
// point with H(P)^(n-1) > K has strictly growing height forever.

class EscapeBound {
public:
    EscapeBound(Integer k, int degree) : k_(std::move(k)), degree_(degree) {
        if (k_ < 1 || degree_ < 2) throw std::invalid_argument("EscapeBound: bad parameters");
    }

    const Integer& multiplier() const { return k_; }
    int degree() const { return degree_; }

    bool certifies(const ProjPoint& p) const {
        return ipow(p.height(), static_cast<unsigned long>(degree_ - 1)) > k_;
    }

    // log2-height threshold: h2(P) > this certifies escape (conservative,
    // exact rational: bitlength(K)/(n-1) >= log2(K)/(n-1))
    Rational log2_threshold() const {
        unsigned long bits = boost::multiprecision::msb(k_) + 1;
        return Rational(bits, static_cast<unsigned long>(degree_ - 1));
    }

private:
    Integer k_;
    int degree_;
};

inline EscapeBound escape_bound(const RationalMap& phi) {
    const int n = phi.degree();
    if (n < 2) throw std::invalid_argument("escape_bound: degree must be >= 2");
    const Integer& res = phi.homogeneous_resultant();
    const int m = 2 * n;  // unknowns: n coeffs of A, n coeffs of B

    auto solve = [&](bool top) {  // top: RHS = R x^(2n-1), else R y^(2n-1)
        std::vector<std::vector<Rational>> mat(static_cast<std::size_t>(m),
                                               std::vector<Rational>(static_cast<std::size_t>(m) + 1, Rational(0)));
        for (int r = 0; r < m; ++r) {
            for (int j = 0; j < n; ++j) {
                int k = r - j;
                if (k >= 0 && k <= n) {
                    mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = Rational(phi.numerator_form().coeff(k));
                    mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(n + j)] = Rational(phi.denominator_form().coeff(k));
                }
            }
        }
        mat[static_cast<std::size_t>(top ? m - 1 : 0)][static_cast<std::size_t>(m)] = Rational(res);
        // Gaussian elimination
        for (int col = 0; col < m; ++col) {
            int pivot = col;
            while (pivot < m && mat[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)].is_zero()) ++pivot;
            if (pivot == m) throw std::logic_error("escape_bound: singular system");
            std::swap(mat[static_cast<std::size_t>(pivot)], mat[static_cast<std::size_t>(col)]);
            for (int r = 0; r < m; ++r) {
                if (r == col || mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) continue;
                Rational f = mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                             mat[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
                for (int c = col; c <= m; ++c)
                    mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                        f * mat[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
            }
        }
        Integer norm1 = 0;
        for (int r = 0; r < m; ++r) {
            Rational v = mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(m)] /
                         mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
            if (denominator(v) != 1) throw std::logic_error("escape_bound: non-integral Bezout coefficients");
            norm1 += boost::multiprecision::abs(numerator(v));
        }
        return norm1;
    };

    Integer k = std::max(solve(true), solve(false));
    if (k < 1) k = 1;
    return EscapeBound(k, n);
}

// ---------------------------------------------------------------------------

enum class OrbitOutcome { periodic, escaped, truncated };

struct OrbitRecord {
    ProjPoint start;
    std::vector<ProjPoint> points;  // points[0] = start; periodic orbits end
                                    // with the first repeated point included
    OrbitOutcome outcome = OrbitOutcome::truncated;
    int tail = 0, period = 0;  // periodic: points[tail + period] == points[tail]
    int escape_index = 0;      // escaped: first index whose height certifies
    Integer escape_height;
    Integer escape_bound_multiplier;
};

inline OrbitRecord orbit(const RationalMap& phi, const ProjPoint& start, int maxiter = 2000) {
    if (phi.degree() < 2) throw std::invalid_argument("orbit: degree must be >= 2");
    EscapeBound bound = escape_bound(phi);
    OrbitRecord rec{start, {start}};
    rec.escape_bound_multiplier = bound.multiplier();
    std::map<ProjPoint, int> seen{{start, 0}};

    if (bound.certifies(start)) {
        rec.outcome = OrbitOutcome::escaped;
        rec.escape_index = 0;
        rec.escape_height = start.height();
        return rec;
    }
    for (int i = 1; i <= maxiter; ++i) {
        ProjPoint next = phi.evaluate(rec.points.back());
        rec.points.push_back(next);
        auto it = seen.find(next);
        if (it != seen.end()) {
            rec.outcome = OrbitOutcome::periodic;
            rec.tail = it->second;
            rec.period = i - it->second;
            return rec;
        }
        if (bound.certifies(next)) {
            rec.outcome = OrbitOutcome::escaped;
            rec.escape_index = i;
            rec.escape_height = next.height();
            return rec;
        }
        seen.emplace(next, i);
    }
    rec.outcome = OrbitOutcome::truncated;
    return rec;
}

// ---------------------------------------------------------------------------
// Pushforward of a point set: roots map to their images under phi. Computed
// as the (x,y)-resultant of S with the pencil u F - t G; a root whose image
// is infinity surfaces as a degree drop in t.

inline PointSetForm pushforward_form(const RationalMap& phi, const PointSetForm& s) {
    if (s.role != VarRole::source) throw std::invalid_argument("pushforward_form: source set expected");
    BinForm<IntPoly> lifted =
        s.form.map_coeffs<IntPoly>([](const Integer& a) { return IntPoly(a); });
    IntPoly d = form_resultant(lifted, pencil_form(phi));
    if (d.zero()) throw std::logic_error("pushforward_form: resultant vanished identically");
    IntForm image = homogenize_target(d, s.form.degree());
    PointSetForm out = PointSetForm::of(image, VarRole::source);  // self-map: relabel t back to x
    return out;
}

// ---------------------------------------------------------------------------

enum class PcfOutcome { pcf, not_pcf, unknown };

struct PcfVerdict {
    PcfOutcome outcome = PcfOutcome::unknown;
    std::optional<PointSetForm> postcritical;  // pcf: stabilized form
    int depth = 0;                             // stabilization depth, or depth reached
    std::optional<OrbitRecord> witness;        // not_pcf: escaped critical orbit
};

// Decide post-critical finiteness: escape certificates on rational critical
// orbits against cumulative pushforward stabilization of the critical form.
inline PcfVerdict pcf_decide(const RationalMap& phi, int maxdepth = 64, int maxiter = 2000) {
    if (phi.degree() < 2) throw std::invalid_argument("pcf_decide: degree must be >= 2");
    PointSetForm crit = critical_form(phi);

    for (const auto& [num, den] : rational_form_roots(crit.form)) {
        OrbitRecord rec = orbit(phi, den.is_zero() ? ProjPoint::infinity() : ProjPoint::of(num, den), maxiter);
        if (rec.outcome == OrbitOutcome::escaped) {
            PcfVerdict v;
            v.outcome = PcfOutcome::not_pcf;
            v.witness = std::move(rec);
            return v;
        }
    }

    constexpr int kFormDegreeCap = 256;
    PointSetForm u = pushforward_form(phi, crit);
    for (int depth = 1; depth <= maxdepth; ++depth) {
        PointSetForm image = pushforward_form(phi, u);
        if (form_divides(image.form, u.form)) {
            PcfVerdict v;
            v.outcome = PcfOutcome::pcf;
            v.postcritical = u;
            v.depth = depth;
            return v;
        }
        if (u.form.degree() + image.form.degree() > kFormDegreeCap) {
            PcfVerdict v;
            v.outcome = PcfOutcome::unknown;
            v.depth = depth;
            return v;
        }
        u = PointSetForm::of(u.form * image.form, VarRole::source);
    }
    PcfVerdict v;
    v.outcome = PcfOutcome::unknown;
    v.depth = maxdepth;
    return v;
}

// x^2 + c specialization: a preperiodic critical orbit forces c integral, so
// only c in {0, -1, -2} survive; everything else escapes.
inline PcfVerdict classify_quadratic(const Rational& c, int maxiter = 2000) {
    // x^2 + a/b as the pair (b x^2 + a y^2, b y^2)
    IntForm F(2, {Integer(numerator(c)), Integer(0), Integer(denominator(c))});
    IntForm G(2, {Integer(denominator(c)), Integer(0), Integer(0)});
    RationalMap phi = RationalMap::from_forms(F, G);

    if (denominator(c) == 1 && (c == 0 || c == -1 || c == -2)) return pcf_decide(phi);

    // non-integer c, or an integer outside [-2, 0]: the critical orbit of 0
    // escapes; produce the certificate
    OrbitRecord rec = orbit(phi, ProjPoint::of(0, 1), maxiter);
    if (rec.outcome != OrbitOutcome::escaped)
        throw std::logic_error("classify_quadratic: expected an escape certificate");
    PcfVerdict v;
    v.outcome = PcfOutcome::not_pcf;
    v.witness = std::move(rec);
    return v;
}

// ---------------------------------------------------------------------------

struct FinitelyCriticalReport {
    PcfVerdict pcf;
    std::vector<Integer> bad_primes;  // outside this set every iterate has CGR
    int checked_iterates = 0;
};

// The finite bad-prime set of a PCF map: primes of bad simple reduction,
// primes <= degree, and primes where two postcritical (or critical) points
// collide.
inline FinitelyCriticalReport bad_prime_set(const RationalMap& phi, const PcfVerdict& verdict) {
    if (verdict.outcome != PcfOutcome::pcf)
        throw std::invalid_argument("bad_prime_set: map is not certified PCF");
    std::set<Integer> s;
    const Integer& r = phi.homogeneous_resultant();
    if (boost::multiprecision::abs(r) != 1)
        for (const auto& p : prime_divisors(r)) s.insert(p);
    for (const auto& p : primes_up_to(phi.degree())) s.insert(p);
    IntForm augmented = squarefree_form(verdict.postcritical->form * critical_form(phi).form);
    Integer disc = form_discriminant(augmented);
    if (boost::multiprecision::abs(disc) != 1)
        for (const auto& p : prime_divisors(disc)) s.insert(p);
    FinitelyCriticalReport rep;
    rep.pcf = verdict;
    rep.bad_primes.assign(s.begin(), s.end());
    return rep;
}

// Check that the iterates up to N keep critically good reduction at every
// listed prime (callers pass primes outside the bad set).
inline bool iterates_cgr_regression(const RationalMap& phi, int max_iterate,
                                    const std::vector<Integer>& primes,
                                    int degree_cap = kDefaultDegreeCap) {
    if (max_iterate < 1) throw std::invalid_argument("iterates_cgr_regression: N >= 1 required");
    RationalMap current = phi;
    for (int k = 1; k <= max_iterate; ++k) {
        if (k > 1) current = compose(current, phi, degree_cap);
        for (const auto& p : primes) {
            if (!cgr_test(current, PadicContext{p})) return false;
        }
    }
    return true;
}

}  // namespace arithdyn
