// Exact-real layer: intervals, expression DAG, escalating comparisons.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "weakadm/xreal.hpp"

using namespace weakadm;

TEST_CASE("double intervals round outward and order soundly") {
    DIv a{1.0, 1.0}, b{3.0, 3.0};
    DIv s = a + b;
    CHECK(s.lo <= 4.0);
    CHECK(s.hi >= 4.0);
    CHECK(s.hi - s.lo < 1e-14);

    DIv t = DIv::point(0.1) * DIv::point(0.1);
    CHECK(t.lo <= 0.01);
    CHECK(t.hi >= 0.0099999999999999999);
    CHECK(certainly_lt(t, DIv::point(0.02)));
    CHECK(!certainly_lt(t, t));

    // division through zero widens to the whole line, never lies
    DIv w = DIv::point(1.0) / DIv{-1.0, 1.0};
    CHECK(w.is_whole());

    CHECK(sqrt(DIv{4.0, 4.0}).lo <= 2.0);
    CHECK(sqrt(DIv{4.0, 4.0}).hi >= 2.0);
    CHECK(sqr(DIv{-3.0, 2.0}).lo == 0.0);
    CHECK(sqr(DIv{-3.0, 2.0}).hi >= 9.0);
}

TEST_CASE("mpfr intervals: directed rounding and floor extraction") {
    Iv third = div(Iv::from_si(1, 64), Iv::from_si(3, 64));
    CHECK(mpfr_cmp(third.lo(), third.hi()) < 0);   // 1/3 is not a binary number
    CHECK(third.hull_d().lo <= 1.0 / 3.0);
    CHECK(third.hull_d().hi >= 1.0 / 3.0);

    // 3000/3 straddles the integer 1000 after rounding: floor must refuse
    mpz_class f;
    CHECK(!mul(third, Iv::from_si(3000, 64)).floor_unique(f));

    Iv ten_third = mul(third, Iv::from_si(10, 64));
    CHECK(ten_third.floor_unique(f));
    CHECK(f == 3);

    // sqrt at 96 bits, squared back: encloses 2 within a couple of double ulps
    Iv sq = sqrt_i(Iv::from_si(2, 96));
    Iv two = sqr_i(sq);
    CHECK(two.hull_d().lo <= 2.0);
    CHECK(two.hull_d().hi >= 2.0);
    CHECK(two.hull_d().width() < 1e-14);
}

TEST_CASE("rational arithmetic stays exact through the DAG") {
    XReal a(mpq_class(1, 3)), b(mpq_class(1, 6));
    XReal s = a + b;
    REQUIRE(s.is_rational());
    CHECK(s.rat() == mpq_class(1, 2));

    XReal p = s * XReal(4) - XReal(2);
    REQUIRE(p.is_rational());
    CHECK(p.rat() == 0);
    CHECK(sign(p) == 0);

    // perfect squares collapse: sqrt(9/4) = 3/2
    XReal r = sqrt(XReal(mpq_class(9, 4)));
    REQUIRE(r.is_rational());
    CHECK(r.rat() == mpq_class(3, 2));

    // integer powers of rationals are exact, including negative exponents
    XReal q = pow_i(XReal(mpq_class(2, 3)), -3);
    REQUIRE(q.is_rational());
    CHECK(q.rat() == mpq_class(27, 8));
}

TEST_CASE("algebraic shortcuts: x - x, x / x, 0 * x") {
    XReal g = sqrt(XReal(2));
    CHECK(!g.is_rational());
    XReal d = g - g;
    REQUIRE(d.is_rational());
    CHECK(d.rat() == 0);
    XReal r = g / g;
    REQUIRE(r.is_rational());
    CHECK(r.rat() == 1);
    XReal z = XReal(0) * g;
    REQUIRE(z.is_rational());
    CHECK(z.rat() == 0);
}

TEST_CASE("escalating comparison separates close irrationals") {
    // sqrt(2) vs the convergent 665857/470832: differ by ~1.6e-12
    XReal s2 = sqrt(XReal(2));
    XReal conv(mpq_class(665857, 470832));
    CHECK(compare(s2, conv) < 0);
    CHECK(compare(conv, s2) > 0);

    // a much closer pair: sqrt(2) vs a 40-digit truncation of its decimal
    mpq_class close("141421356237309504880168872420969807856/100000000000000000000000000000000000000");
    CHECK(compare(s2, XReal(close)) > 0);
}

TEST_CASE("identical-node and equal-rational comparisons are exact ties") {
    XReal g = sqrt(XReal(3));
    CHECK(compare(g, g) == 0);
    CHECK(compare(XReal(mpq_class(2, 4)), XReal(mpq_class(1, 2))) == 0);
}

TEST_CASE("true irrational equality through distinct nodes raises precision_error") {
    // sqrt(2) + sqrt(8) = sqrt(18), but sums of roots never merge
    XReal a = sqrt(XReal(2)) + sqrt(XReal(8));
    XReal b = sqrt(XReal(18));
    CHECK_THROWS_AS((void)compare(a, b), precision_error);
    // try_compare reports "undecidable" instead of throwing
    CHECK(!try_compare(a, b).has_value());
    // products of roots of rationals do merge: sqrt(2) sqrt(2) = 2 exactly
    CHECK(compare(sqrt(XReal(2)) * sqrt(XReal(2)), XReal(2)) == 0);
    CHECK(compare(sqrt(XReal(50)) / sqrt(XReal(2)), XReal(5)) == 0);
}

TEST_CASE("pi and derived quantities") {
    XReal pi = XReal::pi();
    CHECK(compare(pi, XReal(3)) > 0);
    CHECK(compare(pi, XReal(4)) < 0);
    CHECK(pi.approx() == doctest::Approx(3.14159265358979).epsilon(1e-12));

    // unit ball volumes: V_1 = 2, V_2 = pi, V_3 = 4 pi / 3, V_4 = pi^2/2
    CHECK(unit_ball_volume(1).rat() == 2);
    CHECK(compare(unit_ball_volume(2), pi) == 0);   // shares the pi node
    CHECK(unit_ball_volume(3).approx() == doctest::Approx(4.18879020478639).epsilon(1e-12));
    CHECK(unit_ball_volume(4).approx() == doctest::Approx(4.93480220054468).epsilon(1e-12));
    // certified, not just approximate: enclose within 1e-13
    CHECK(certainly_lt(unit_ball_volume(3).fast(), DIv::point(4.18879020478645)));
    CHECK(certainly_gt(unit_ball_volume(3).fast(), DIv::point(4.18879020478635)));
}

TEST_CASE("rational powers through pow_q") {
    // 8^(1/3) = 2 exactly
    XReal r = pow_q(XReal(8), mpq_class(1, 3));
    REQUIRE(r.is_rational());
    CHECK(r.rat() == 2);
    // 2^(1/3) is irrational: enclosure straddles the double value
    XReal c = pow_q(XReal(2), mpq_class(1, 3));
    CHECK(!c.is_rational());
    CHECK(c.approx() == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
    // (x^(1/2))^2 vs x: same value, distinct nodes, small gap decided quickly
    CHECK(compare(pow_q(XReal(5), mpq_class(3, 2)), XReal(11)) > 0);
    CHECK(compare(pow_q(XReal(5), mpq_class(3, 2)), XReal(12)) < 0);
}

TEST_CASE("norm helpers") {
    std::vector<XReal> v{XReal(3), XReal(4)};
    CHECK(norm2(v).rat() == 25);
    CHECK(norm(v).rat() == 5);
    // structurally identical trees compare equal even without node sharing
    std::vector<XReal> w{XReal(1), XReal(1)};
    CHECK(compare(norm(w), sqrt(XReal(2))) == 0);
}

TEST_CASE("decimal rendering is stable and plausible") {
    XReal g = sqrt(XReal(2));
    const std::string d1 = g.decimal(20);
    const std::string d2 = g.decimal(20);
    CHECK(d1 == d2);
    CHECK(d1.substr(0, 12) == std::string("1.4142135623"));
}
