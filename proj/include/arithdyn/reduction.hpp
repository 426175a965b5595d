#pragma once

// Per-prime analysis: the potential-good-reduction criterion (monodromy group
// order + subset-sum differences of ramification profiles, read in
// contrapositive form), the explicit good-reduction model search, and the
// consolidated per-prime report.

#include "arithdyn/monodromy.hpp"
#include "arithdyn/ramification.hpp"
#include "arithdyn/ratmap.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace arithdyn {

// All achievable sums of ramification indices over subsets of a fiber;
// always contains 0 (empty set) and n (the whole fiber).
inline std::set<int> subset_sums(const std::vector<int>& profile) {
    std::set<int> sums{0};
    for (int e : profile) {
        if (e <= 0) throw std::invalid_argument("subset_sums: nonpositive multiplicity");
        std::set<int> next = sums;
        for (int s : sums) next.insert(s + e);
        sums = std::move(next);
    }
    return sums;
}

// Nonzero integers sum_A e(P) - sum_B e(Q) for subsets A, B of two fibers.
inline std::set<int> difference_integers(const std::vector<int>& lambda_profile,
                                         const std::vector<int>& mu_profile) {
    std::set<int> out;
    std::set<int> a = subset_sums(lambda_profile), b = subset_sums(mu_profile);
    for (int x : a)
        for (int y : b)
            if (x != y) out.insert(x - y);
    return out;
}

enum class CriterionVerdict { certified_potential_good_reduction, inconclusive, not_applicable };

inline const char* to_string(CriterionVerdict v) {
    switch (v) {
        case CriterionVerdict::certified_potential_good_reduction: return "CertifiedPotentialGoodReduction";
        case CriterionVerdict::inconclusive: return "Inconclusive";
        case CriterionVerdict::not_applicable: return "NotApplicable";
    }
    return "?";
}

struct PairDifferences {
    std::string lambda, mu;      // branch value labels
    std::set<int> differences;   // nonzero difference integers
    bool some_divisible = false; // p divides at least one of them
};

struct CriterionReport {
    Integer prime;
    bool crv = false;
    bool divides_group_order = false;
    Integer group_order;
    std::vector<PairDifferences> pairs;
    // the theorem's direct conclusion, kept for auditability: p divides the
    // group order and, for each pair, some nonzero difference
    bool raw_divisibility_conclusion = false;
    CriterionVerdict verdict = CriterionVerdict::inconclusive;
};

inline std::string branch_label(const BranchPointInfo& b) {
    if (b.at_infinity) return "inf";
    if (b.exact) {
        Rational v = *b.exact;
        if (denominator(v) == 1) return numerator(v).str();
        return numerator(v).str() + "/" + denominator(v).str();
    }
    std::ostringstream os;
    os << std::setprecision(12) << static_cast<double>(b.location.real());
    if (b.location.imag() != 0) {
        os << (b.location.imag() > 0 ? "+" : "-") << std::setprecision(12)
           << static_cast<double>(abs(b.location.imag())) << "i";
    }
    return os.str();
}

// Contrapositive reading of the criterion: when the branch values stay
// distinct mod p and p fails the divisibility conclusion (it does not divide
// the monodromy order, or some pair of branch values has no nonzero
// difference divisible by p), the map is certified to have potential good
// reduction at p.
inline CriterionReport theorem1_verdict(const RationalMap& phi, const PadicContext& ctx,
                                        const MonodromyData& mono) {
    CriterionReport rep;
    rep.prime = ctx.p();
    rep.crv = crv_test(phi, ctx);
    rep.group_order = mono.order;
    rep.divides_group_order = (mono.order % ctx.p() == 0);

    bool exists_clean_pair = false;
    for (std::size_t i = 0; i < mono.points.size(); ++i) {
        for (std::size_t j = i + 1; j < mono.points.size(); ++j) {
            PairDifferences pd;
            pd.lambda = branch_label(mono.points[i]);
            pd.mu = branch_label(mono.points[j]);
            pd.differences = difference_integers(mono.points[i].cycle_type, mono.points[j].cycle_type);
            for (int d : pd.differences) {
                if (Integer(d) % ctx.p() == 0) {
                    pd.some_divisible = true;
                    break;
                }
            }
            if (!pd.some_divisible) exists_clean_pair = true;
            rep.pairs.push_back(std::move(pd));
        }
    }
    rep.raw_divisibility_conclusion = rep.divides_group_order && !exists_clean_pair;

    if (!rep.crv)
        rep.verdict = CriterionVerdict::not_applicable;
    else if (!rep.divides_group_order || exists_clean_pair)
        rep.verdict = CriterionVerdict::certified_potential_good_reduction;
    else
        rep.verdict = CriterionVerdict::inconclusive;
    return rep;
}

// The finite set of primes whose criterion verdict can be anything other
// than Certified: crv failures (divisors of the branch discriminant) plus
// the primes <= n that divide the group order and admit, for every pair of
// branch values, a divisible nonzero difference. (Nonzero differences lie in
// [-n, n], so any p > n with crv is automatically certified.)
inline std::vector<Integer> candidate_bad_primes(const RationalMap& phi, const MonodromyData& mono) {
    std::set<Integer> out;
    Integer disc = form_discriminant(branch_form(phi).form);
    if (boost::multiprecision::abs(disc) != 1)
        for (const auto& p : prime_divisors(disc)) out.insert(p);
    for (const auto& p : primes_up_to(phi.degree())) {
        CriterionReport rep = theorem1_verdict(phi, PadicContext{p}, mono);
        if (rep.verdict != CriterionVerdict::certified_potential_good_reduction) out.insert(p);
    }
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Good-reduction model search (over Q; Unknown is a legitimate outcome).

struct GoodReductionWitness {
    Mobius change;      // A, as a matrix of 4 integers
    RationalMap model;  // Phi o A, with full-degree separable reduction
    Integer prime;
};

struct SearchBounds {
    int max_scaling_exp = 4;
    int max_translations = 64;
};

// Floor of the minimal p-adic valuation among the finite nonzero roots of f.
// Newton polygon: root valuations are the negated slopes of the lower hull,
// so the minimum is -(steepest hull slope); fractional values (ramified
// roots) are floored since only integral scaling exponents exist over Q.
// nullopt when f has no finite nonzero roots.
inline std::optional<long> min_root_valuation(const IntPoly& f0, const PadicContext& ctx) {
    IntPoly f = f0;
    if (f.zero()) return std::nullopt;
    while (!f.zero() && f.coeff(0).is_zero())
        f = IntPoly::from_coeffs({f.coeffs().begin() + 1, f.coeffs().end()});
    if (f.degree() < 1) return std::nullopt;

    std::vector<std::pair<long, long>> pts;  // (i, v(a_i)) for nonzero a_i
    for (int i = 0; i <= f.degree(); ++i) {
        if (f.coeff(i).is_zero()) continue;
        pts.emplace_back(i, padic_valuation(f.coeff(i), ctx).value());
    }
    std::vector<std::pair<long, long>> hull;  // Andrew monotone chain, lower hull
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& a = hull.back();
            long long cross = static_cast<long long>(a.first - o.first) * (pt.second - o.second) -
                              static_cast<long long>(a.second - o.second) * (pt.first - o.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    if (hull.size() < 2) return std::nullopt;
    const auto& a = hull[hull.size() - 2];
    const auto& b = hull.back();
    Rational max_slope(b.second - a.second, b.first - a.first);
    Rational m = -max_slope;
    Integer num = numerator(m), den = denominator(m);
    Integer q = num / den;
    if (num < 0 && num % den != 0) q -= 1;  // floor toward -infinity
    return static_cast<long>(q);
}

inline std::optional<GoodReductionWitness> good_reduction_search(const RationalMap& phi,
                                                                 const PadicContext& ctx,
                                                                 const SearchBounds& bounds = {}) {
    auto verified = [&](const Mobius& a) -> std::optional<GoodReductionWitness> {
        RationalMap model = conjugate_source(phi, a);
        if (padic_valuation(model.homogeneous_resultant(), ctx) == Valuation::of(0) &&
            separable_test(model.reduce(ctx))) {
            return GoodReductionWitness{a, model, ctx.p()};
        }
        return std::nullopt;
    };

    if (auto w = verified(Mobius::identity())) return w;

    // the integralizing scaling: make the fiber points over 0 and infinity
    // p-integral before anything else
    std::vector<Rational> scalings;
    {
        std::optional<long> mf = min_root_valuation(phi.numerator_form().dehomogenized(), ctx);
        std::optional<long> mg = min_root_valuation(phi.denominator_form().dehomogenized(), ctx);
        std::optional<long> m;
        if (mf && mg) m = std::min(*mf, *mg);
        else if (mf) m = mf;
        else if (mg) m = mg;
        if (m && *m != 0) {
            long k = *m;
            Rational u = (k >= 0) ? Rational(ipow(ctx.p(), static_cast<unsigned long>(k)))
                                  : Rational(1, ipow(ctx.p(), static_cast<unsigned long>(-k)));
            scalings.push_back(u);
        }
    }
    for (int k = 1; k <= bounds.max_scaling_exp; ++k) {
        scalings.emplace_back(ipow(ctx.p(), static_cast<unsigned long>(k)));
        scalings.emplace_back(Rational(1, ipow(ctx.p(), static_cast<unsigned long>(k))));
    }

    std::vector<Rational> translations{Rational(0)};
    auto add_translation = [&](const Rational& b) {
        if (static_cast<int>(translations.size()) >= bounds.max_translations) return;
        if (std::find(translations.begin(), translations.end(), b) == translations.end())
            translations.push_back(b);
    };
    for (long b : {1, -1, 2, -2, 3, -3}) add_translation(Rational(b));
    if (phi.degree() >= 2) {
        for (const auto& [num, den] : rational_form_roots(critical_form(phi).form))
            if (den != 0) add_translation(Rational(num, den));
        for (const auto& [num, den] : rational_form_roots(branch_form(phi).form))
            if (den != 0) add_translation(Rational(num, den));
    }

    for (const auto& u : scalings)
        if (auto w = verified(Mobius::scaling(u))) return w;
    for (const auto& b : translations) {
        if (b.is_zero()) continue;
        if (auto w = verified(Mobius::translation(b))) return w;
    }
    // products: x -> u x + b and x -> u (x + b)
    for (const auto& u : scalings) {
        for (const auto& b : translations) {
            if (b.is_zero()) continue;
            if (auto w = verified(Mobius::translation(b) * Mobius::scaling(u))) return w;
            if (auto w = verified(Mobius::scaling(u) * Mobius::translation(b))) return w;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

enum class PotentialVerdict {
    witnessed_good_reduction,          // explicit model found over Q
    certified_potential_good_reduction,
    inconclusive,
    not_applicable                     // crv fails
};

inline const char* to_string(PotentialVerdict v) {
    switch (v) {
        case PotentialVerdict::witnessed_good_reduction: return "GoodReductionWitnessed";
        case PotentialVerdict::certified_potential_good_reduction: return "CertifiedPotentialGoodReduction";
        case PotentialVerdict::inconclusive: return "Inconclusive";
        case PotentialVerdict::not_applicable: return "NotApplicable";
    }
    return "?";
}

struct ReductionReport {
    Integer prime;
    bool sgr = false;
    bool separable = false;
    bool crv = false;
    bool cgr = false;
    std::optional<bool> cpt;  // crosscheck verdict; empty when inseparable
    CriterionReport criterion;
    std::optional<GoodReductionWitness> witness;
    PotentialVerdict potential = PotentialVerdict::inconclusive;
};

struct AnalyzeOptions {
    MonodromySettings mono;
    SearchBounds search;
};

inline ReductionReport analyze_at(const RationalMap& phi, const PadicContext& ctx,
                                  const MonodromyData& mono, const AnalyzeOptions& opt = {}) {
    ReductionReport rep;
    rep.prime = ctx.p();
    rep.sgr = sgr_test(phi, ctx);
    rep.separable = separable_test(phi.reduce(ctx));
    rep.crv = crv_test(phi, ctx);
    rep.cgr = cgr_test(phi, ctx);
    rep.cpt = cpt_crosscheck(phi, ctx);
    rep.criterion = theorem1_verdict(phi, ctx, mono);
    rep.witness = good_reduction_search(phi, ctx, opt.search);

    if (rep.criterion.crv != rep.crv) throw std::logic_error("analyze: crv fields disagree");
    if (rep.cgr && !rep.crv) throw std::logic_error("analyze: cgr without crv");

    if (rep.witness)
        rep.potential = PotentialVerdict::witnessed_good_reduction;
    else if (rep.criterion.verdict == CriterionVerdict::certified_potential_good_reduction)
        rep.potential = PotentialVerdict::certified_potential_good_reduction;
    else if (rep.criterion.verdict == CriterionVerdict::not_applicable)
        rep.potential = PotentialVerdict::not_applicable;
    else
        rep.potential = PotentialVerdict::inconclusive;
    return rep;
}

inline std::vector<ReductionReport> analyze(const RationalMap& phi, const std::vector<Integer>& primes,
                                            const AnalyzeOptions& opt = {}) {
    MonodromyData mono = monodromy(phi, opt.mono);
    std::vector<ReductionReport> out;
    out.reserve(primes.size());
    for (const auto& p : primes) out.push_back(analyze_at(phi, PadicContext{p}, mono, opt));
    return out;
}

// Primes <= 50 plus every prime dividing the homogeneous resultant or the
// branch/critical discriminants: outside this list all verdicts are trivial.
inline std::vector<Integer> default_prime_list(const RationalMap& phi) {
    std::set<Integer> ps;
    for (const auto& p : primes_up_to(50)) ps.insert(p);
    const Integer& r = phi.homogeneous_resultant();
    if (boost::multiprecision::abs(r) != 1)
        for (const auto& p : prime_divisors(r)) ps.insert(p);
    if (phi.degree() >= 2) {
        for (const IntForm& f : {branch_form(phi).form, critical_form(phi).form}) {
            Integer d = form_discriminant(f);
            if (boost::multiprecision::abs(d) != 1)
                for (const auto& p : prime_divisors(d)) ps.insert(p);
        }
    }
    return {ps.begin(), ps.end()};
}

}  // namespace arithdyn
