#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hypcert/polynomial.hpp"
#include "hypcert/real_algebraic.hpp"

using namespace hypcert;

namespace {

RatPoly poly(std::initializer_list<long> coeffs_low_first) {
    std::vector<Rational> c;
    for (long v : coeffs_low_first) c.emplace_back(v);
    return RatPoly(std::move(c));
}

RealAlgebraic sqrt_of(long v) { return alg_sqrt(RealAlgebraic(Rational(v))); }

}  // namespace

TEST_CASE("polynomial ring operations") {
    RatPoly x2m1 = poly({-1, 0, 1});
    RatPoly xm1 = poly({-1, 1});
    RatPoly xp1 = poly({1, 1});

    CHECK(xp1 * xm1 == x2m1);

    auto [q, r] = poly_divmod(poly({-2, 0, 1}), xm1);  // x^2-2 = (x+1)(x-1) - 1
    CHECK(q == xp1);
    CHECK(r == poly({-1}));

    CHECK(poly_gcd(x2m1, xm1) == xm1);  // already monic
    CHECK_THROWS_AS(poly_divmod(x2m1, RatPoly{}), std::domain_error);
}

TEST_CASE("squarefree part") {
    // (x-1)^2 -> x-1
    CHECK(squarefree_part(poly({1, -2, 1})) == poly({-1, 1}));
    // x^2-2 already squarefree
    CHECK(squarefree_part(poly({-2, 0, 1})) == poly({-2, 0, 1}));
    // x^3 - x^2: gcd with derivative is x, quotient x^2 - x
    CHECK(squarefree_part(poly({0, 0, -1, 1})) == poly({0, -1, 1}));
    CHECK_THROWS_AS(squarefree_part(RatPoly{}), std::domain_error);
}

TEST_CASE("sturm chain sign-change oracle for x^2-2") {
    // chain: x^2-2, 2x, 2; V(-2)=2, V(2)=0 by hand
    auto chain = sturm_chain(poly({-2, 0, 1}));
    REQUIRE(chain.size() == 3);
    CHECK(sturm_variations_at(chain, Rational(-2)) == 2);
    CHECK(sturm_variations_at(chain, Rational(2)) == 0);
    CHECK(sturm_count(chain, Rational(-2), Rational(2)) == 2);
    CHECK(sturm_count(chain, Rational(0), Rational(2)) == 1);
}

TEST_CASE("real root isolation") {
    SECTION("x^2-2 has two simple roots") {
        auto iso = RealAlgebraic::isolate_roots(poly({-2, 0, 1}));
        REQUIRE(iso.roots.size() == 2);
        CHECK(iso.multiplicities == std::vector<int>{1, 1});
        CHECK(iso.roots[0].root_index() == 1);
        CHECK(iso.roots[1].root_index() == 2);
        // decimal oracle: sqrt(2) = 1.41421356...
        auto I = iso.roots[1].refine(Rational(1, 100000));
        CHECK(I.lo >= Rational(14141, 10000));
        CHECK(I.hi <= Rational(14143, 10000));
        auto J = iso.roots[0].refine(Rational(1, 100000));
        CHECK(J.hi <= -Rational(14141, 10000));
    }
    SECTION("(x-1)^2 has one double root") {
        auto iso = RealAlgebraic::isolate_roots(poly({1, -2, 1}));
        REQUIRE(iso.roots.size() == 1);
        CHECK(iso.multiplicities == std::vector<int>{2});
        CHECK(iso.roots[0].is_rational());
        CHECK(iso.roots[0].rational_value() == 1);
    }
    SECTION("x^2+1 has no real roots") {
        auto iso = RealAlgebraic::isolate_roots(poly({1, 0, 1}));
        CHECK(iso.roots.empty());
    }
    SECTION("mixed multiplicities x^3-x^2") {
        auto iso = RealAlgebraic::isolate_roots(poly({0, 0, -1, 1}));
        REQUIRE(iso.roots.size() == 2);
        CHECK(iso.roots[0].rational_value() == 0);
        CHECK(iso.multiplicities[0] == 2);
        CHECK(iso.roots[1].rational_value() == 1);
        CHECK(iso.multiplicities[1] == 1);
    }
}

TEST_CASE("refine") {
    RealAlgebraic r2 = sqrt_of(2);
    SECTION("width request honored, interval inside [1.41, 1.42]") {
        auto I = r2.refine(Rational(1, 100));
        CHECK(I.width() <= Rational(1, 100));
        CHECK(I.lo >= Rational(141, 100));
        CHECK(I.hi <= Rational(142, 100));
    }
    SECTION("rational fast path") {
        RealAlgebraic q(Rational(3, 2));
        auto I = q.refine(Rational(1, 7));
        CHECK(I.lo == Rational(3, 2));
        CHECK(I.hi == Rational(3, 2));
    }
    SECTION("monotone nesting") {
        auto I1 = r2.refine(Rational(1));
        auto I2 = r2.refine(Rational(1, 4));
        CHECK(I2.lo >= I1.lo);
        CHECK(I2.hi <= I1.hi);
    }
}

TEST_CASE("minpoly changes sign across the isolating interval") {
    for (const RealAlgebraic& v :
         {sqrt_of(2), sqrt_of(3) + sqrt_of(2), alg_sqrt(sqrt_of(2))}) {
        auto I = v.interval();
        int sl = zp_sign_at(to_primitive(v.minpoly()), I.lo);
        int sh = zp_sign_at(to_primitive(v.minpoly()), I.hi);
        CHECK(sl * sh < 0);
    }
}

TEST_CASE("algebraic arithmetic") {
    RealAlgebraic r2 = sqrt_of(2), r3 = sqrt_of(3);

    SECTION("sqrt2 + sqrt3 is a root of x^4 - 10x^2 + 1 in [3.1, 3.2]") {
        RealAlgebraic s = r2 + r3;
        CHECK(s.minpoly() == poly({1, 0, -10, 0, 1}));
        auto I = s.refine(Rational(1, 100));
        CHECK(I.lo >= Rational(31, 10));
        CHECK(I.hi <= Rational(32, 10));
        CHECK(s.root_index() == 4);
    }
    SECTION("sqrt2 * sqrt2 collapses to the rational 2") {
        RealAlgebraic p = r2 * r2;
        CHECK(p.is_rational());
        CHECK(p.rational_value() == 2);
        CHECK(p.minpoly().degree() == 1);
    }
    SECTION("sqrt2 - sqrt2 = 0") {
        CHECK((r2 - r2).sgn() == 0);
    }
    SECTION("division") {
        RealAlgebraic q = r3 / r2;  // sqrt(3/2)
        CHECK((q * q).rational_value() == Rational(3, 2));
        CHECK_THROWS_AS(r2 / RealAlgebraic(0), std::domain_error);
    }
}

TEST_CASE("sign and compare") {
    RealAlgebraic r2 = sqrt_of(2);
    CHECK(alg_sign(r2 - RealAlgebraic(Rational(3, 2))) == -1);  // 2 < 2.25
    CHECK(alg_compare(r2 * r2, RealAlgebraic(2)) == 0);
    CHECK(alg_sign(RealAlgebraic(0)) == 0);
    CHECK(r2 > RealAlgebraic(1));
    CHECK(RealAlgebraic(Rational(-1, 3)) < RealAlgebraic(0));
}

TEST_CASE("algebraic square roots") {
    SECTION("sqrt(2)") {
        RealAlgebraic s = sqrt_of(2);
        CHECK(s.minpoly() == poly({-2, 0, 1}));
        CHECK(s.root_index() == 2);
    }
    SECTION("sqrt(4) = 2") {
        RealAlgebraic s = sqrt_of(4);
        CHECK(s.is_rational());
        CHECK(s.rational_value() == 2);
    }
    SECTION("sqrt(sqrt(2)) = 2^(1/4), decimal oracle 1.1892") {
        RealAlgebraic s = alg_sqrt(sqrt_of(2));
        CHECK(s.minpoly() == poly({-2, 0, 0, 0, 1}));
        auto I = s.refine(Rational(1, 100));
        CHECK(I.lo >= Rational(118, 100));
        CHECK(I.hi <= Rational(120, 100));
    }
    SECTION("negative input rejected") {
        CHECK_THROWS_AS(alg_sqrt(RealAlgebraic(-1)), std::domain_error);
    }
}

TEST_CASE("decimal output") {
    CHECK(alg_to_decimal(sqrt_of(2), 4) == "1.4142");
    CHECK(alg_to_decimal(RealAlgebraic(Rational(1, 3)), 3) == "0.333");
    CHECK(alg_to_decimal(RealAlgebraic(0), 5) == "0.00000");
    CHECK(alg_to_decimal(-sqrt_of(2), 2) == "-1.41");
}

TEST_CASE("rationals embed homomorphically") {
    std::mt19937 rng(20240517);
    std::uniform_int_distribution<long> d(-20, 20), dq(1, 9);
    for (int t = 0; t < 50; ++t) {
        Rational a(d(rng), dq(rng)), b(d(rng), dq(rng));
        RealAlgebraic x(a), y(b);
        CHECK((x + y).rational_value() == a + b);
        CHECK((x - y).rational_value() == a - b);
        CHECK((x * y).rational_value() == a * b);
        if (b != 0) CHECK((x / y).rational_value() == a / b);
    }
}

TEST_CASE("field axioms on small algebraics") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> d(-4, 4), root(2, 5);
    auto sample = [&]() -> RealAlgebraic {
        long kind = d(rng);
        if (kind <= 0) return RealAlgebraic(Rational(d(rng), 1 + std::abs(d(rng))));
        return sqrt_of(root(rng)) + RealAlgebraic(Rational(d(rng)));
    };
    for (int t = 0; t < 12; ++t) {
        RealAlgebraic x = sample(), y = sample(), z = sample();
        CHECK(alg_compare((x + y) + z, x + (y + z)) == 0);
        CHECK(alg_compare(x * (y + z), x * y + x * z) == 0);
        CHECK(alg_compare(x + y, y + x) == 0);
    }
}
