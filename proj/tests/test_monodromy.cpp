#include <arithdyn/monodromy.hpp>
#include <arithdyn/parse.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace arithdyn;

TEST_CASE("permutations", "[monodromy]") {
    Permutation a = Permutation::from_images({1, 0, 2});  // (1 2)
    Permutation b = Permutation::from_images({1, 2, 0});  // (1 2 3)
    CHECK((a * a).is_identity());
    CHECK((a * b).cycle_type() == std::vector<int>{2, 1});
    CHECK(b.cycle_type() == std::vector<int>{3});
    CHECK(b.inverse() * b == Permutation::identity(3));
    CHECK(a.cycle_str() == "(1 2)");
    CHECK_THROWS_AS(Permutation::from_images({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("group order via stabilizer chain", "[monodromy]") {
    Permutation three = Permutation::from_images({1, 2, 0});
    CHECK(permutation_group_order({three}, 3) == 3);

    Permutation swap2 = Permutation::from_images({1, 0, 2});
    CHECK(permutation_group_order({swap2, three}, 3) == 6);  // S3 (brute-force closure has 6)

    // S5 = <(1 2), (1 2 3 4 5)>
    Permutation t = Permutation::from_images({1, 0, 2, 3, 4});
    Permutation c5 = Permutation::from_images({1, 2, 3, 4, 0});
    CHECK(permutation_group_order({t, c5}, 5) == 120);

    // Klein four group inside S4
    Permutation d1 = Permutation::from_images({1, 0, 3, 2});
    Permutation d2 = Permutation::from_images({2, 3, 0, 1});
    CHECK(permutation_group_order({d1, d2}, 4) == 4);

    CHECK(permutation_group_order({Permutation::identity(4)}, 4) == 1);
    CHECK(transitive_on({d1, d2}, 4));
    CHECK_FALSE(transitive_on({swap2}, 3));
}

TEST_CASE("complex roots of forms", "[monodromy]") {
    // t^2 u - 4 u^3: roots {2, -2, inf}
    IntForm b(3, {Integer(-4), Integer(0), Integer(1), Integer(0)});
    FormRoots r = complex_roots(b, 50);
    REQUIRE(r.finite.size() == 2);
    CHECK(r.includes_infinity);
    CHECK(abs(r.finite[0] - Complex50(-2)) < 1e-40);
    CHECK(abs(r.finite[1] - Complex50(2)) < 1e-40);
    CHECK(r.radii[0] < 1e-30);

    // x^2 - 2
    IntForm s(2, {Integer(-2), Integer(0), Integer(1)});
    FormRoots r2 = complex_roots(s, 50);
    REQUIRE(r2.finite.size() == 2);
    CHECK_FALSE(r2.includes_infinity);
    CHECK(abs(r2.finite[1] - Complex50(Real50("1.4142135623730950488016887242096980785696718753769"))) <
          1e-10);

    // xy: {0, inf}
    IntForm t(2, {Integer(0), Integer(1), Integer(0)});
    FormRoots r3 = complex_roots(t, 50);
    REQUIRE(r3.finite.size() == 1);
    CHECK(r3.includes_infinity);
    CHECK(abs(r3.finite[0]) < 1e-45);
}

TEST_CASE("track_loop building blocks", "[monodromy]") {
    // x^n around 0: the n-cycle rotating the n-th roots
    RationalMap p3 = parse_map("x^3");
    std::vector<Complex50> fiber;
    Real50 two_pi = 2 * boost::math::constants::pi<Real50>();
    for (int k = 0; k < 3; ++k) {
        Real50 theta = two_pi * k / 3;
        Real50 r = pow(Real50(5), Real50(1) / 3);
        fiber.emplace_back(r * cos(theta), r * sin(theta));
    }
    LoopSpec loop{Complex50(5), Complex50(0), Real50(1)};
    Permutation sigma = track_loop(p3, loop, fiber);
    CHECK(sigma.cycle_type() == std::vector<int>{3});

    // around a non-branch point: identity
    LoopSpec trivial{Complex50(5), Complex50(3), Real50("0.25")};
    CHECK(track_loop(p3, trivial, fiber).is_identity());

    // x^3 - 3x around 2: a transposition (matches the fiber profile {2,1})
    RationalMap phi = parse_map("x^3 - 3*x");
    std::vector<Complex50> f2;
    // fiber over 5: roots of x^3 - 3x - 5
    IntPoly fp({Integer(-5), Integer(-3), Integer(0), Integer(1)});
    auto roots = numeric::poly_roots(numeric::complex_coeffs<Complex50>(fp));
    for (auto& z : roots) f2.push_back(z);
    LoopSpec around2{Complex50(5), Complex50(2), Real50(1)};
    CHECK(track_loop(phi, around2, f2).cycle_type() == std::vector<int>{2, 1});
}

TEST_CASE("monodromy of power maps", "[monodromy]") {
    for (int n : {2, 3, 5, 8}) {
        MonodromyData m = monodromy(parse_map("x^" + std::to_string(n)));
        CHECK(m.degree == n);
        CHECK(m.order == n);  // cyclic
        REQUIRE(m.points.size() == 2);
        CHECK_FALSE(m.points[0].at_infinity);
        CHECK(m.points[0].cycle_type == std::vector<int>{n});
        CHECK(m.points[1].at_infinity);
        CHECK(m.points[1].cycle_type == std::vector<int>{n});
        CHECK(m.points[1].generator == m.points[0].generator.inverse());
        CHECK(m.ordered_product().is_identity());
        REQUIRE(m.points[0].exact.has_value());
        CHECK(*m.points[0].exact == Rational(0));
    }
}

TEST_CASE("monodromy of x^3 - 3x", "[monodromy]") {
    MonodromyData m = monodromy(parse_map("x^3 - 3*x"));
    CHECK(m.order == 6);
    REQUIRE(m.points.size() == 3);

    // finite branch values -2 and 2 within 1e-10, cycle types {2,1}
    bool saw_plus = false, saw_minus = false;
    for (const auto& b : m.points) {
        if (b.at_infinity) {
            CHECK(b.cycle_type == std::vector<int>{3});
            continue;
        }
        CHECK(b.cycle_type == std::vector<int>{2, 1});
        REQUIRE(b.exact.has_value());
        if (*b.exact == Rational(2)) {
            saw_plus = true;
            CHECK(abs(b.location - Complex50(2)) < 1e-10);
        }
        if (*b.exact == Rational(-2)) {
            saw_minus = true;
            CHECK(abs(b.location - Complex50(-2)) < 1e-10);
        }
    }
    CHECK(saw_plus);
    CHECK(saw_minus);

    // product-one and Riemann-Hurwitz
    CHECK(m.ordered_product().is_identity());
    int excess = 0;
    for (const auto& b : m.points)
        for (int e : b.cycle_type) excess += e - 1;
    CHECK(excess == 4);
}

TEST_CASE("monodromy of quadratic maps has order 2", "[monodromy]") {
    for (const char* text : {"x^2", "x^2 - 1", "x^2 - x", "(2*x^2+1)/x", "(x^2+1)/x"}) {
        MonodromyData m = monodromy(parse_map(text));
        CHECK(m.order == 2);
    }
}

TEST_CASE("monodromy determinism", "[monodromy]") {
    MonodromyData a = monodromy(parse_map("x^3 - 3*x"));
    MonodromyData b = monodromy(parse_map("x^3 - 3*x"));
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].generator == b.points[i].generator);
        CHECK(a.points[i].at_infinity == b.points[i].at_infinity);
    }
    CHECK(a.order == b.order);
}

TEST_CASE("monodromy invariants on random cubics", "[monodromy]") {
    oracles::Rng rng(21);
    int done = 0;
    while (done < 6) {
        RationalMap phi = rng.map(3, 4);
        MonodromyData m = [&]() -> MonodromyData {
            try {
                return monodromy(phi);
            } catch (const TrackingLost&) {
                return MonodromyData{};  // skip pathological samples
            }
        }();
        if (m.degree == 0) continue;
        ++done;
        // the hard assertions inside monodromy() already compared rational
        // profiles; check the global count once more from the outside
        int excess = 0;
        for (const auto& b : m.points)
            for (int e : b.cycle_type) excess += e - 1;
        CHECK(excess == 2 * phi.degree() - 2);
        CHECK(m.order % phi.degree() == 0);  // transitive group order divisibility
    }
}

TEST_CASE("lattes doubling map monodromy is the Klein four group", "[monodromy]") {
    // doubling on y^2 = x^3 + 1: branch values are the three 2-torsion
    // x-coordinates, each with profile {2,2}; infinity is unbranched
    RationalMap lattes = parse_map("(x^4 - 8*x)/(4*x^3 + 4)");
    MonodromyData m = monodromy(lattes);
    CHECK(m.order == 4);
    REQUIRE(m.points.size() == 3);
    for (const auto& b : m.points) {
        CHECK_FALSE(b.at_infinity);
        CHECK(b.cycle_type == std::vector<int>{2, 2});
    }
}
