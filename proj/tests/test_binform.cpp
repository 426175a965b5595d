#include <arithdyn/binform.hpp>
#include <arithdyn/fp.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace arithdyn;

static IntForm F(int deg, std::initializer_list<long> coeffs) {  // coeff of x^i y^(deg-i), ascending i
    std::vector<Integer> c;
    for (long x : coeffs) c.emplace_back(x);
    return IntForm(deg, std::move(c));
}

TEST_CASE("homogeneous resultant examples", "[binform]") {
    // (2x^2+y^2, xy) -> 2 : the map (2x^2+1)/x at p=2
    CHECK(form_resultant(F(2, {1, 0, 2}), F(2, {0, 1, 0})) == 2);
    // (x^3-3xy^2, y^3) -> Res = F(1,0)^3 = 1
    CHECK(form_resultant(F(3, {0, -3, 0, 1}), F(3, {1, 0, 0, 0})) == 1);
    // shared projective root
    IntForm a = F(2, {1, 2, 3});
    CHECK(form_resultant(a, a) == 0);
    CHECK(form_resultant(F(2, {1, 0, 0}), F(2, {0, 0, 1})) == 1);  // y^2 vs x^2: no common root
}

TEST_CASE("form resultant matches Sylvester with stated degrees", "[binform]") {
    oracles::Rng rng(91);
    for (int i = 0; i < 400; ++i) {
        int m = static_cast<int>(rng.in(1, 4)), n = static_cast<int>(rng.in(1, 4));
        std::vector<Integer> a, b;
        for (int k = 0; k <= m; ++k) a.emplace_back(rng.in(0, 3) == 0 ? 0 : rng.in(-9, 9));
        for (int k = 0; k <= n; ++k) b.emplace_back(rng.in(0, 3) == 0 ? 0 : rng.in(-9, 9));
        IntForm A(m, a), B(n, b);
        if (A.all_zero() || B.all_zero()) continue;
        CHECK(form_resultant(A, B) == oracles::sylvester_form_resultant(A, B));
    }
}

TEST_CASE("homogeneous equals plain resultant when no degree drops", "[binform]") {
    oracles::Rng rng(92);
    for (int i = 0; i < 120; ++i) {
        IntPoly f = rng.poly(4, 9), g = rng.poly(4, 9);
        if (f.degree() != g.degree() || f.degree() < 1) continue;
        IntForm A = IntForm::homogenize(f, f.degree());
        IntForm B = IntForm::homogenize(g, g.degree());
        Integer hr = form_resultant(A, B);
        Integer pr = resultant(f, g);
        CHECK((hr == pr || hr == -pr));
    }
}

TEST_CASE("form discriminant examples", "[binform]") {
    // branch pair {a/b, inf}: b t s - a s^2  ->  b^2
    CHECK(form_discriminant(F(2, {-7, 3, 0})) == 9);
    // t^2 u - 4 u^3 (branch set of x^3-3x) -> 16
    CHECK(form_discriminant(F(3, {-4, 0, 1, 0})) == 16);
    // (x-y)(x+y) = x^2 - y^2 -> 4
    CHECK(form_discriminant(F(2, {-1, 0, 1})) == 4);
    // degree <= 1 convention
    CHECK(form_discriminant(F(1, {3, 2})) == 1);
    // repeated root at infinity
    CHECK(form_discriminant(F(2, {5, 0, 0})) == 0);
}

TEST_CASE("form discriminant equals polynomial discriminant when full degree", "[binform]") {
    oracles::Rng rng(93);
    for (int i = 0; i < 150; ++i) {
        IntPoly f = rng.poly(5, 9);
        if (f.degree() < 2) continue;
        IntForm B = IntForm::homogenize(f, f.degree());
        CHECK(form_discriminant(B) == oracles::poly_discriminant(f));
    }
}

TEST_CASE("squarefree form and infinity bookkeeping", "[binform]") {
    // x^2 y (roots {0 double, inf}) -> squarefree = x y
    IntForm b = F(3, {0, 0, 1, 0});
    IntForm s = squarefree_form(b);
    CHECK(s.degree() == 2);
    CHECK(s == F(2, {0, 1, 0}));
    CHECK(form_discriminant(s) != 0);

    // primitive + sign normalization
    CHECK(primitive_form(F(2, {-2, 0, -4})) == F(2, {1, 0, 2}));

    // divisibility: roots of xy inside roots of xy(x+y)
    CHECK(form_divides(F(2, {0, 1, 0}), F(3, {0, 1, 1, 0})));  // {0,inf} inside roots of x*y*(x+y)
    CHECK_FALSE(form_divides(F(1, {1, 1}), F(2, {0, 1, 0})));  // root -1 not in {0, inf}
}

TEST_CASE("multiplicity profiles", "[binform]") {
    // q F - p G for x^3-3x at 2: x^3 - 3x - 2 = (x+1)^2 (x-2): {2,1}
    IntForm v = F(3, {-2, -3, 0, 1});
    CHECK(form_multiplicities(v) == std::vector<int>{2, 1});
    // fiber over infinity of x^3 - 3x: y^3 -> {3}
    CHECK(form_multiplicities(F(3, {1, 0, 0, 0})) == std::vector<int>{3});
    // x^n at 0: x^n -> {n}
    CHECK(form_multiplicities(F(4, {0, 0, 0, 0, 1})) == std::vector<int>{4});
    CHECK(form_multiplicities(F(2, {-1, 0, 1})) == std::vector<int>{1, 1});
}

TEST_CASE("rational projective roots of forms", "[binform]") {
    auto r1 = rational_form_roots(F(2, {0, 1, 0}));  // xy: {inf, 0}
    REQUIRE(r1.size() == 2);
    CHECK((r1[0].first == 1 && r1[0].second == 0));
    CHECK((r1[1].first == 0 && r1[1].second == 1));

    auto r2 = rational_form_roots(F(2, {-2, 1, 3}));  // 3x^2 + xy - 2y^2 = (3x - 2y)(x + y)
    REQUIRE(r2.size() == 2);
    CHECK((r2[0].first == -1 && r2[0].second == 1));
    CHECK((r2[1].first == 2 && r2[1].second == 3));
}

TEST_CASE("reduction mod p of polynomials and forms", "[binform]") {
    FpContext f3{Integer(3)}, f2{Integer(2)};
    // x^3 - 3x mod 3 = x^3
    FpPoly r = FpPoly::reduce(IntPoly({Integer(0), Integer(-3), Integer(0), Integer(1)}), f3);
    CHECK(r.degree() == 3);
    CHECK(r.coeff(1) == 0);
    CHECK(r.coeff(3) == 1);
    // 2x^2 + y^2 mod 2 = y^2 (stated degree preserved)
    FpForm b = FpForm::reduce(F(2, {1, 0, 2}), f2);
    CHECK(b.degree() == 2);
    CHECK(b.dehomogenized().degree() == 0);
    CHECK(b.infinity_multiplicity() == 2);
    CHECK_FALSE(b.squarefree(f2));
}

TEST_CASE("p | disc iff reduced form not squarefree", "[binform]") {
    oracles::Rng rng(94);
    auto primes = primes_up_to(50);
    int tested = 0;
    while (tested < 100) {
        int deg = static_cast<int>(rng.in(2, 5));
        std::vector<Integer> c;
        for (int i = 0; i <= deg; ++i) c.emplace_back(rng.in(-20, 20));
        IntForm b(deg, c);
        if (b.all_zero()) continue;
        IntForm s = squarefree_form(b);
        if (s.degree() < 2) continue;
        ++tested;
        Integer disc = form_discriminant(s);
        REQUIRE(disc != 0);
        for (const auto& p : primes) {
            FpContext F{p};
            bool divides = disc % p == 0;
            bool collides = !FpForm::reduce(s, F).squarefree(F);
            CHECK(divides == collides);
        }
    }
}

TEST_CASE("Fp polynomial and form algebra", "[binform]") {
    FpContext f5{Integer(5)};
    FpPoly a = FpPoly::from_coeffs({Integer(1), Integer(2), Integer(1)});  // (x+1)^2
    FpPoly b = FpPoly::from_coeffs({Integer(1), Integer(1)});
    CHECK(FpPoly::gcd(a, b, f5) == FpPoly::monic(b, f5));
    auto [q, rem] = FpPoly::divmod(a, b, f5);
    CHECK(rem.zero());
    CHECK(FpPoly::mul(q, b, f5) == a);

    FpForm A = FpForm::reduce(F(2, {0, 1, 0}), f5);  // xy
    FpForm B = FpForm::reduce(F(2, {0, 0, 1}), f5);  // x^2
    FpForm g = FpForm::gcd(A, B, f5);
    CHECK(g.degree() == 1);  // common root x = 0
    FpForm q2 = FpForm::div_exact(B, g, f5);
    CHECK(FpForm::mul(q2, g, f5) == B);
}
