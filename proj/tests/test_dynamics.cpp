#include <arithdyn/dynamics.hpp>
#include <arithdyn/parse.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace arithdyn;

static ProjPoint Q(long a, long b) { return ProjPoint::of(a, b); }

TEST_CASE("escape bound certifies height growth", "[dynamics]") {
    RationalMap phi = parse_map("x^2 - x");
    EscapeBound bound = escape_bound(phi);
    CHECK(bound.multiplier() >= 1);
    CHECK(bound.log2_threshold() >= 0);

    // oracle: points above the threshold gain height under one application
    oracles::Rng rng(61);
    int done = 0;
    while (done < 200) {
        Integer a = rng.in(-4000, 4000), b = rng.in(1, 4000);
        if (a.is_zero()) continue;
        ProjPoint p = ProjPoint::of(a, b);
        if (!bound.certifies(p)) continue;
        ++done;
        CHECK(phi.evaluate(p).height() > p.height());
    }

    // power maps: heights are exactly multiplicative, bound 1 suffices
    EscapeBound pw = escape_bound(parse_map("x^5"));
    CHECK(pw.multiplier() == 1);
    for (long v : {2, 3, 7}) {
        ProjPoint p = Q(v, 1);
        CHECK(parse_map("x^5").evaluate(p).height() == ipow(Integer(v), 5));
    }
}

TEST_CASE("orbits", "[dynamics]") {
    // 0 -> -1 -> 0 under x^2 - 1
    OrbitRecord a = orbit(parse_map("x^2 - 1"), Q(0, 1));
    CHECK(a.outcome == OrbitOutcome::periodic);
    CHECK(a.tail == 0);
    CHECK(a.period == 2);
    REQUIRE(a.points.size() == 3);
    CHECK(a.points[1] == Q(-1, 1));
    CHECK(a.points[2] == Q(0, 1));

    // 0 -> -2 -> 2 -> 2 under x^2 - 2
    OrbitRecord b = orbit(parse_map("x^2 - 2"), Q(0, 1));
    CHECK(b.outcome == OrbitOutcome::periodic);
    CHECK(b.tail == 2);
    CHECK(b.period == 1);
    REQUIRE(b.points.size() == 4);
    CHECK(b.points[1] == Q(-2, 1));
    CHECK(b.points[2] == Q(2, 1));

    // 1/2 escapes under x^2 - x through -1/4, 5/16
    OrbitRecord c = orbit(parse_map("x^2 - x"), Q(1, 2));
    CHECK(c.outcome == OrbitOutcome::escaped);
    REQUIRE(c.points.size() >= 3);
    CHECK(c.points[0] == Q(1, 2));
    CHECK(c.points[1] == Q(-1, 4));
    CHECK(c.points[2] == Q(5, 16));
    CHECK(ipow(c.escape_height, 1) > 0);

    // escape certificate validity: heights keep growing strictly
    ProjPoint p = c.points[static_cast<std::size_t>(c.escape_index)];
    RationalMap phi = parse_map("x^2 - x");
    Integer h = p.height();
    for (int i = 0; i < 20; ++i) {
        p = phi.evaluate(p);
        CHECK(p.height() > h);
        h = p.height();
    }

    // x^2 + 1 at 0: 0, 1, 2, 5, 26, ... escapes
    OrbitRecord d = orbit(parse_map("x^2 + 1"), Q(0, 1));
    CHECK(d.outcome == OrbitOutcome::escaped);
    CHECK(d.points[2] == Q(2, 1));
}

TEST_CASE("pushforward of point sets", "[dynamics]") {
    // x^2 sends {-1, 1} to {1}
    RationalMap sq = parse_map("x^2");
    PointSetForm pm = PointSetForm::of(IntForm(2, {Integer(-1), Integer(0), Integer(1)}), VarRole::source);
    PointSetForm image = pushforward_form(sq, pm);
    CHECK(image.form == IntForm(1, {Integer(-1), Integer(1)}));  // x - y: root 1

    // fixed set divides its own pushforward: {0, inf} under x^2
    PointSetForm fixed = PointSetForm::of(IntForm(2, {Integer(0), Integer(1), Integer(0)}), VarRole::source);
    PointSetForm fimage = pushforward_form(sq, fixed);
    CHECK(form_divides(fimage.form, fixed.form));

    // x^2 - 1 sends {0, inf} to {-1, inf}
    PointSetForm img2 = pushforward_form(parse_map("x^2 - 1"), fixed);
    auto roots = rational_form_roots(img2.form);
    REQUIRE(roots.size() == 2);
    CHECK((roots[0].first == 1 && roots[0].second == 0));
    CHECK((roots[1].first == -1 && roots[1].second == 1));
}

TEST_CASE("pcf decisions", "[dynamics]") {
    // x^2 - 1: postcritical {0, -1, inf}
    PcfVerdict a = pcf_decide(parse_map("x^2 - 1"));
    REQUIRE(a.outcome == PcfOutcome::pcf);
    IntForm expected(3, {Integer(0), Integer(1), Integer(1), Integer(0)});  // x y (x + y)
    CHECK(a.postcritical->form == expected);

    // x^2 - x: not PCF, witnessed by the escaping orbit of 1/2
    PcfVerdict b = pcf_decide(parse_map("x^2 - x"));
    REQUIRE(b.outcome == PcfOutcome::not_pcf);
    REQUIRE(b.witness.has_value());
    CHECK(b.witness->points[0] == Q(1, 2));
    CHECK(b.witness->points[1] == Q(-1, 4));
    CHECK(b.witness->points[2] == Q(5, 16));

    // x^2: postcritical {0, inf}
    PcfVerdict c = pcf_decide(parse_map("x^2"));
    REQUIRE(c.outcome == PcfOutcome::pcf);
    CHECK(c.postcritical->form == IntForm(2, {Integer(0), Integer(1), Integer(0)}));
}

TEST_CASE("lattes doubling map is pcf with postcritical 2-torsion", "[dynamics]") {
    RationalMap lattes = parse_map("(x^4 - 8*x)/(4*x^3 + 4)");
    PcfVerdict v = pcf_decide(lattes);
    REQUIRE(v.outcome == PcfOutcome::pcf);
    // postcritical = {roots of x^3 + 1} and infinity: (x^3 + y^3) y
    IntForm expected(4, {Integer(0), Integer(1), Integer(0), Integer(0), Integer(1)});
    CHECK(v.postcritical->form == expected);

    FinitelyCriticalReport rep = bad_prime_set(lattes, v);
    REQUIRE(rep.bad_primes.size() == 2);
    CHECK(rep.bad_primes[0] == 2);
    CHECK(rep.bad_primes[1] == 3);

    CHECK(iterates_cgr_regression(lattes, 2, {Integer(5), Integer(7), Integer(11), Integer(13)}));
}

TEST_CASE("quadratic classification", "[dynamics]") {
    CHECK(classify_quadratic(Rational(0)).outcome == PcfOutcome::pcf);
    CHECK(classify_quadratic(Rational(-1)).outcome == PcfOutcome::pcf);
    CHECK(classify_quadratic(Rational(-2)).outcome == PcfOutcome::pcf);
    CHECK(classify_quadratic(Rational(1, 2)).outcome == PcfOutcome::not_pcf);
    CHECK(classify_quadratic(Rational(-3)).outcome == PcfOutcome::not_pcf);
    CHECK(classify_quadratic(Rational(1)).outcome == PcfOutcome::not_pcf);
    CHECK(classify_quadratic(Rational(-7, 3)).outcome == PcfOutcome::not_pcf);

    // agreement with the generic decision procedure
    oracles::Rng rng(62);
    for (int i = 0; i < 30; ++i) {
        long aa = rng.in(-20, 20), bb = rng.in(1, 20);
        Rational c(aa, bb);
        PcfVerdict special = classify_quadratic(c);
        IntForm F(2, {Integer(numerator(c)), Integer(0), Integer(denominator(c))});
        IntForm G(2, {Integer(denominator(c)), Integer(0), Integer(0)});
        PcfVerdict generic = pcf_decide(RationalMap::from_forms(F, G));
        CHECK(special.outcome == generic.outcome);
    }
}

TEST_CASE("bad prime sets of quadratic pcf maps", "[dynamics]") {
    // x^2 - 1 -> {2}; x^2 -> {2}
    PcfVerdict a = pcf_decide(parse_map("x^2 - 1"));
    auto ra = bad_prime_set(parse_map("x^2 - 1"), a);
    REQUIRE(ra.bad_primes.size() == 1);
    CHECK(ra.bad_primes[0] == 2);

    PcfVerdict b = pcf_decide(parse_map("x^2"));
    auto rb = bad_prime_set(parse_map("x^2"), b);
    REQUIRE(rb.bad_primes.size() == 1);
    CHECK(rb.bad_primes[0] == 2);

    CHECK_THROWS_AS(bad_prime_set(parse_map("x^2 - x"), pcf_decide(parse_map("x^2 - x"))),
                    std::invalid_argument);

    // regression: iterates keep cgr away from the bad set
    CHECK(iterates_cgr_regression(parse_map("x^2 - 1"), 3,
                                  {Integer(3), Integer(5), Integer(7), Integer(11), Integer(13)}));
    CHECK(iterates_cgr_regression(parse_map("x^2"), 4,
                                  {Integer(3), Integer(5), Integer(7), Integer(11), Integer(13)}));

    // x^2 - x: some iterate loses cgr at a fresh prime outside any fixed set
    RationalMap bad = parse_map("x^2 - x");
    bool all_good = true;
    std::vector<Integer> fresh;
    for (const auto& p : primes_up_to(200))
        if (p > 13) fresh.push_back(p);
    for (int k = 1; k <= 4 && all_good; ++k)
        all_good = iterates_cgr_regression(bad, k, fresh);
    CHECK_FALSE(all_good);
}

TEST_CASE("postcritical layers nest under evaluation", "[dynamics]") {
    RationalMap phi = parse_map("x^2 - 2");
    PointSetForm crit = critical_form(phi);
    PointSetForm layer = pushforward_form(phi, crit);
    for (const auto& [num, den] : rational_form_roots(crit.form)) {
        ProjPoint p = den.is_zero() ? ProjPoint::infinity() : ProjPoint::of(num, den);
        ProjPoint image = phi.evaluate(p);
        // the image is a root of the pushforward form
        Integer value = 0;
        const IntForm& f = layer.form;
        Integer xp = 1;
        std::vector<Integer> yp(static_cast<std::size_t>(f.degree()) + 1, Integer(1));
        for (int j = 1; j <= f.degree(); ++j) yp[static_cast<std::size_t>(j)] = yp[static_cast<std::size_t>(j - 1)] * image.y();
        for (int i = 0; i <= f.degree(); ++i) {
            value += f.coeff(i) * xp * yp[static_cast<std::size_t>(f.degree() - i)];
            xp *= image.x();
        }
        CHECK(value.is_zero());
    }
}

TEST_CASE("pcf is stable under integral-unit conjugation", "[dynamics]") {
    RationalMap phi = parse_map("x^2 - 1");
    for (auto [a, b, c, d] : {std::array<long, 4>{1, 1, 0, 1}, std::array<long, 4>{2, 1, 1, 1},
                              std::array<long, 4>{1, 0, 1, 1}}) {
        Mobius f(a, b, c, d);
        RationalMap conj = conjugate(phi, f);
        PcfVerdict v = pcf_decide(conj);
        CHECK(v.outcome == PcfOutcome::pcf);
        // the bad sets differ only by primes dividing det f (and entry
        // denominators, absent here: integer entries)
        auto s_phi = bad_prime_set(phi, pcf_decide(phi)).bad_primes;
        auto s_conj = bad_prime_set(conj, v).bad_primes;
        for (const auto& p : s_conj) {
            bool in_base = std::find(s_phi.begin(), s_phi.end(), p) != s_phi.end();
            if (!in_base) CHECK(f.det() % p == 0);
        }
    }
}
