#include <arithdyn/integers.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace arithdyn;

TEST_CASE("p-adic valuation on rationals", "[integers]") {
    PadicContext p2{Integer(2)}, p3{Integer(3)}, p5{Integer(5)};

    CHECK(padic_valuation(Rational(-8, 3), p2) == Valuation::of(3));
    CHECK(padic_valuation(Rational(0), p5).is_infinite());
    // the homogeneous resultant 2 of (2x^2+1)/x is a non-unit at 2
    CHECK(padic_valuation(Integer(2), p2) == Valuation::of(1));

    CHECK(padic_valuation(Rational(9, 4), p3) == Valuation::of(2));
    CHECK(padic_valuation(Rational(4, 9), p3) == Valuation::of(-2));
}

TEST_CASE("valuation axioms on random samples", "[integers]") {
    PadicContext p3{Integer(3)};
    std::mt19937 gen(2024);
    std::uniform_int_distribution<long> d(-4000, 4000);
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        Rational a(d(gen), 1 + std::abs(d(gen)));
        Rational b(d(gen), 1 + std::abs(d(gen)));
        if (a.is_zero() || b.is_zero()) continue;
        ++checked;
        // multiplicativity
        CHECK(padic_valuation(a * b, p3) == padic_valuation(a, p3) + padic_valuation(b, p3));
        // ultrametric inequality, equality when valuations differ
        Rational s = a + b;
        Valuation va = padic_valuation(a, p3), vb = padic_valuation(b, p3);
        Valuation vmin = va < vb ? va : vb;
        CHECK(padic_valuation(s, p3) >= vmin);
        if (!(va == vb)) CHECK(padic_valuation(s, p3) == vmin);
    }
    CHECK(checked > 300);
}

TEST_CASE("primality and context validation", "[integers]") {
    CHECK(is_prime(Integer(2)));
    CHECK(is_prime(Integer(97)));
    CHECK(is_prime(Integer("1000000007")));
    CHECK_FALSE(is_prime(Integer(1)));
    CHECK_FALSE(is_prime(Integer(561)));  // Carmichael
    CHECK_THROWS_AS(PadicContext(Integer(6)), std::invalid_argument);

    auto ps = primes_up_to(50);
    REQUIRE(ps.size() == 15);
    CHECK(ps.front() == 2);
    CHECK(ps.back() == 47);
}

TEST_CASE("factorization", "[integers]") {
    auto f = factorize(Integer(-432));  // 2^4 * 3^3
    REQUIRE(f.size() == 2);
    CHECK(f[Integer(2)] == 4);
    CHECK(f[Integer(3)] == 3);

    Integer big = Integer("1000003") * Integer("1000033") * 8;
    auto g = factorize(big);
    CHECK(g[Integer(2)] == 3);
    CHECK(g[Integer("1000003")] == 1);
    CHECK(g[Integer("1000033")] == 1);

    auto pd = prime_divisors(Integer(16));
    REQUIRE(pd.size() == 1);
    CHECK(pd[0] == 2);
}
