// Certified enumeration: counts, minima, the nu staircase.  Cross-checks
// run the same instance through independent code paths (generic ball sweep
// vs the Diophantine slice counter, histogram vs per-multiple counts) and
// against hand-computed or brute-forced oracles.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "weakadm/box.hpp"
#include "weakadm/cf.hpp"
#include "weakadm/enumerate.hpp"
#include "weakadm/errors.hpp"
#include "weakadm/lattice.hpp"

using namespace weakadm;

namespace {

Lattice zn(int n) {
    std::vector<std::vector<XReal>> cols(n, std::vector<XReal>(n, XReal(0)));
    for (int i = 0; i < n; ++i) cols[i][i] = XReal(1);
    return Lattice::make(std::move(cols), "Z^" + std::to_string(n));
}

Lattice diag(const std::vector<mpq_class>& d) {
    const int n = (int)d.size();
    std::vector<std::vector<XReal>> cols(n, std::vector<XReal>(n, XReal(0)));
    for (int i = 0; i < n; ++i) cols[i][i] = XReal(d[i]);
    return Lattice::make(std::move(cols), "diag");
}

// planar lattice (p + alpha q, q), optionally with the Diophantine tag that
// routes counting through the slice path
Lattice golden_lattice(bool tagged, int sgn = 1) {
    const auto cf = CFNumber::golden();
    const XReal th = sgn > 0 ? cf->value() : -cf->value();
    std::vector<std::vector<XReal>> cols = {{XReal(1), XReal(0)}, {th, XReal(1)}};
    Lattice L = Lattice::make(std::move(cols), "golden");
    if (tagged) {
        DiophForm f;
        f.r = 1;
        f.s = 1;
        f.theta = {th};
        f.cf = cf;
        f.cf_sign = {sgn};
        L.dioph = f;
    }
    return L;
}

BoxSpec planar_box(mpq_class cy0, mpq_class cy1, mpq_class q0, mpq_class q1) {
    const Shape s = Shape::make({1, 1}, {mpq_class(1), mpq_class(1)}, {1});
    return BoxSpec::make(s, {XReal(cy0), XReal(cy1)}, {XReal(q0), XReal(q1)});
}

bool same_up_to_sign(const std::vector<long long>& a, const std::vector<long long>& b) {
    if (a.size() != b.size()) return false;
    bool eq = true, neg = true;
    for (size_t i = 0; i < a.size(); ++i) {
        eq = eq && a[i] == b[i];
        neg = neg && a[i] == -b[i];
    }
    return eq || neg;
}

} // namespace

TEST_CASE("integer grid: counts, primitives, histogram") {
    const Lattice Z2 = zn(2);
    const Shape s2 = Shape::cube(2);

    const BoxSpec b1 = BoxSpec::cube(s2, {XReal(0), XReal(0)}, XReal(1));
    CHECK(count_points(Z2, b1) == 9);
    CHECK(count_multiples(Z2, 1, b1) == 8);
    CHECK(count_primitive_gcd(Z2, b1) == 8);

    const BoxSpec b2 = BoxSpec::cube(s2, {XReal(0), XReal(0)}, XReal(2));
    CHECK(count_points(Z2, b2) == 25);
    const auto h = gcd_histogram(Z2, b2);
    REQUIRE(h.size() == 2);
    CHECK(h.at(1) == 16);
    CHECK(h.at(2) == 8);
    CHECK(count_multiples(Z2, 2, b2) == 8);
    CHECK(count_primitive_gcd(Z2, b2) == 16);

    // translated box: x in [3,7], y in [-1,0] via center (5, -1/2)
    const Shape s2r = Shape::make({1, 1}, {mpq_class(1), mpq_class(1)}, {0, 1});
    const BoxSpec bt = BoxSpec::make(s2r, {XReal(5), XReal(mpq_class(-1, 2))},
                                     {XReal(2), XReal(mpq_class(1, 2))});
    CHECK(count_points(Z2, bt) == 10);        // 5 x-values, 2 y-values
    CHECK(count_multiples(Z2, 3, bt) == 2);   // (3,0), (6,0)
    // gcd(x, 0) = x kills the whole y = 0 row; the y = -1 row survives
    CHECK(count_primitive_gcd(Z2, bt) == 5);
    long long prim = 0;
    for (long long x = 3; x <= 7; ++x)
        for (long long y = -1; y <= 0; ++y) {
            long long g = std::abs(x);
            long long b = std::abs(y);
            while (b) { long long t = g % b; g = b; b = t; }
            if (g == 1) ++prim;
        }
    CHECK(prim == 5);

    // Z^3 cube radius 2: 125 points, 98 primitive (inclusion-exclusion)
    const Lattice Z3 = zn(3);
    const BoxSpec c3 = BoxSpec::cube(Shape::cube(3), {XReal(0), XReal(0), XReal(0)}, XReal(2));
    CHECK(count_points(Z3, c3) == 125);
    CHECK(count_primitive_gcd(Z3, c3) == 98);
    const auto h3 = gcd_histogram(Z3, c3);
    CHECK(h3.at(1) == 98);
    CHECK(h3.at(2) == 26);
    long long tot = 0;
    for (const auto& kv : h3) tot += kv.second;
    CHECK(tot == 124);
}

TEST_CASE("closed blocks include exact boundary ties") {
    // single euclidean block of radius sqrt(2): the four corners (+-1, +-1)
    // lie exactly on the sphere and count
    const Shape ball = Shape::make({2}, {mpq_class(1)}, {0});
    const BoxSpec b = BoxSpec::make(ball, {XReal(0), XReal(0)}, {sqrt(XReal(2))});
    CHECK(count_points(zn(2), b) == 9);

    // radius slightly below excludes them
    const BoxSpec b2 = BoxSpec::make(ball, {XReal(0), XReal(0)}, {XReal(mpq_class(14, 10))});
    CHECK(count_points(zn(2), b2) == 5);
}

TEST_CASE("multi-block box against brute force") {
    // R^3 = R^2 x R: disk of radius 5 times interval of radius 3
    const Shape s = Shape::make({2, 1}, {mpq_class(1, 2), mpq_class(1)}, {0, 1});
    const BoxSpec b = BoxSpec::make(s, {XReal(0), XReal(0), XReal(0)}, {XReal(5), XReal(3)});
    long long oracle = 0;
    for (int x = -5; x <= 5; ++x)
        for (int y = -5; y <= 5; ++y)
            for (int z = -3; z <= 3; ++z)
                if (x * x + y * y <= 25) ++oracle;
    CHECK(oracle == 81 * 7);
    CHECK(count_points(zn(3), b) == oracle);
}

TEST_CASE("diophantine slice path agrees with the generic sweep") {
    const Lattice tagged = golden_lattice(true);
    const Lattice plain = golden_lattice(false);

    const std::vector<BoxSpec> boxes = {
        planar_box(0, 0, 10, 10),
        planar_box(0, 0, 4, 9),
        planar_box(mpq_class(3, 10), mpq_class(7, 10), 4, 25),
        planar_box(mpq_class(-5, 2), 3, 7, 11),
    };
    for (const auto& b : boxes) {
        CAPTURE(b.radii.size());
        CHECK(count_points(tagged, b) == count_points(plain, b));
        CHECK(count_primitive_gcd(tagged, b) == count_primitive_gcd(plain, b));
        CHECK(gcd_histogram(tagged, b) == gcd_histogram(plain, b));
        for (long long k = 1; k <= 4; ++k)
            CHECK(count_multiples(tagged, k, b) == count_multiples(plain, k, b));
    }

    // negative-sign form (p - alpha q, q)
    const Lattice tneg = golden_lattice(true, -1);
    const Lattice pneg = golden_lattice(false, -1);
    const BoxSpec bn = planar_box(1, mpq_class(1, 3), 6, 14);
    CHECK(count_points(tneg, bn) == count_points(pneg, bn));
    CHECK(count_primitive_gcd(tneg, bn) == count_primitive_gcd(pneg, bn));
    CHECK(gcd_histogram(tneg, bn) == gcd_histogram(pneg, bn));
}

TEST_CASE("histogram, multiples, and primitives tie together") {
    const Lattice tagged = golden_lattice(true);
    const BoxSpec b = planar_box(mpq_class(3, 10), mpq_class(7, 10), 4, 25);

    const auto h = gcd_histogram(tagged, b);
    long long nonzero = 0;
    for (const auto& kv : h) nonzero += kv.second;
    CHECK(count_points(tagged, b) == nonzero + (b.origin_inside() ? 1 : 0));
    CHECK(count_primitive_gcd(tagged, b) == (h.count(1) ? h.at(1) : 0));

    // kLambda cap Z_Q minus 0 is the union of the gcd classes divisible by k
    for (long long k = 1; k <= 5; ++k) {
        long long expect = 0;
        for (const auto& kv : h)
            if (kv.first % k == 0) expect += kv.second;
        CHECK(count_multiples(tagged, k, b) == expect);
    }
}

TEST_CASE("counting is invariant under the balancing map phi") {
    // phi scales block i by Qbar/Q_i; with Q = (4, 9), Qbar = 6 it is the
    // rational diag(3/2, 2/3), so both sides stay exactly decidable
    const BoxSpec b = planar_box(1, 2, 4, 9);
    const Shape s = b.shape;
    const BoxSpec bphi = BoxSpec::make(
        s, {XReal(mpq_class(3, 2)), XReal(mpq_class(4, 3))}, {XReal(6), XReal(6)});

    auto scale_cols = [&](const Lattice& L) {
        std::vector<std::vector<XReal>> cols(L.dim());
        for (int j = 0; j < L.dim(); ++j) {
            cols[j] = {XReal(mpq_class(3, 2)) * L.entry(0, j),
                       XReal(mpq_class(2, 3)) * L.entry(1, j)};
        }
        return Lattice::make(std::move(cols), L.id() + "+phi");
    };

    const Lattice Z2 = zn(2);
    CHECK(count_points(Z2, b) == count_points(scale_cols(Z2), bphi));

    const Lattice G = golden_lattice(true);          // slice path on the left,
    const Lattice Gphi = scale_cols(G);              // generic path on the right
    CHECK(count_points(G, b) == count_points(Gphi, bphi));
    CHECK(count_primitive_gcd(G, b) == count_primitive_gcd(Gphi, bphi));
}

TEST_CASE("first minima with witnesses") {
    const auto mz = lambda1(zn(2));
    REQUIRE(mz.attained);
    CHECK(compare(mz.value, XReal(1)) == 0);

    const auto md = lambda1(diag({mpq_class(3), mpq_class(1, 3)}));
    REQUIRE(md.attained);
    CHECK(compare(md.value, XReal(mpq_class(1, 3))) == 0);
    CHECK(same_up_to_sign(md.witness, {0, 1}));

    // golden lattice: (1, 0) is a lattice vector, so lambda1 = 1; the
    // shortest vector off the q = 0 line is longer, (alpha-2, 1)
    const auto mg = lambda1(golden_lattice(false));
    REQUIRE(mg.attained);
    CHECK(compare(mg.value, XReal(1)) == 0);
    CHECK(same_up_to_sign(mg.witness, {1, 0}));
}

TEST_CASE("minima in the excluded subspace") {
    const Lattice D = diag({mpq_class(2), mpq_class(3), mpq_class(5)});
    // I = {2}: C = {x3 = 0}, sublattice spanned by (2,0,0), (0,3,0)
    {
        const auto r = lambda1_in_subspace(D, Shape::cube_with_subspace(3, {2}));
        REQUIRE(r.attained);
        CHECK(compare(r.value, XReal(2)) == 0);
    }
    // I = {0}: C = {x1 = 0}
    {
        const auto r = lambda1_in_subspace(D, Shape::cube_with_subspace(3, {0}));
        REQUIRE(r.attained);
        CHECK(compare(r.value, XReal(3)) == 0);
    }
    // I = {0, 1}: C = {x1 = x2 = 0}
    {
        const auto r = lambda1_in_subspace(D, Shape::cube_with_subspace(3, {0, 1}));
        REQUIRE(r.attained);
        CHECK(compare(r.value, XReal(5)) == 0);
    }
    // I full: C = {0}, nothing to attain
    CHECK(!lambda1_in_subspace(D, Shape::cube(3)).attained);
    // I empty: C = R^3, plain first minimum
    {
        const auto r = lambda1_in_subspace(D, Shape::cube_with_subspace(3, {}));
        REQUIRE(r.attained);
        CHECK(compare(r.value, XReal(2)) == 0);
    }
    // golden lattice, I = {1}: C = {x2 = 0} holds the points (p, 0)
    {
        const Shape s = Shape::make({1, 1}, {mpq_class(1), mpq_class(1)}, {1});
        const auto r = lambda1_in_subspace(golden_lattice(false), s);
        REQUIRE(r.attained);
        CHECK(compare(r.value, XReal(1)) == 0);
        CHECK(same_up_to_sign(r.witness, {1, 0}));
    }
}

TEST_CASE("successive box minima") {
    const auto ms = minima_box_gauge(diag({mpq_class(2), mpq_class(5)}),
                                     {XReal(1), XReal(1)}, 2);
    REQUIRE(ms.size() == 2);
    CHECK(compare(ms[0].value, XReal(2)) == 0);
    CHECK(compare(ms[1].value, XReal(5)) == 0);
    // (0,1) and (1,1) tie at gauge 5, so only the first witness is pinned
    CHECK(same_up_to_sign(ms[0].witness, {1, 0}));

    // anisotropic radii flip the order: gauges max(2|z1|/4, 5|z2|/1)
    const auto ma = minima_box_gauge(diag({mpq_class(2), mpq_class(5)}),
                                     {XReal(4), XReal(1)}, 2);
    REQUIRE(ma.size() == 2);
    CHECK(compare(ma[0].value, XReal(mpq_class(1, 2))) == 0);
    CHECK(same_up_to_sign(ma[0].witness, {1, 0}));
    CHECK(compare(ma[1].value, XReal(5)) == 0);
}

TEST_CASE("multiples hitting a ball") {
    const Lattice Z2 = zn(2);
    const auto ks = multiples_hitting_ball(Z2, {XReal(0), XReal(0)}, XReal(mpq_class(7, 2)));
    CHECK(ks == std::vector<long long>({1, 2, 3}));

    // shifted center, boundary ties at distance exactly 1
    const auto kt = multiples_hitting_ball(Z2, {XReal(10), XReal(0)}, XReal(1));
    CHECK(kt == std::vector<long long>({1, 2, 3, 5, 9, 10, 11}));
}

TEST_CASE("nu staircase of the golden lattice") {
    const Shape s = Shape::make({1, 1}, {mpq_class(1), mpq_class(1)}, {1});
    const Lattice G = golden_lattice(true);

    const NuProfile prof = nu_profile(G, s, XReal(100));
    // badly approximable: the whole staircase is the single record (-2, 1)
    REQUIRE(prof.steps.size() == 1);
    CHECK(same_up_to_sign(prof.steps[0].z, {-2, 1}));
    const DIv nm = prof.steps[0].nm.fast();
    CHECK(nm.lo > 0.381965);
    CHECK(nm.hi < 0.381967);

    // below the first record the strict ball is empty: nu = +infinity
    const auto q0 = prof.nu_below(XReal(mpq_class(105, 100)));
    CHECK(q0.empty);
    // above it, nu = (2 - alpha)^{1/2} = 1/golden = 0.618...
    const auto q1 = prof.nu_below(XReal(2));
    REQUIRE(!q1.empty);
    CHECK(q1.nm.lo > 0.61803);
    CHECK(q1.nm.hi < 0.61804);
    const auto q2 = prof.nu_below(XReal(100));
    REQUIRE(!q2.empty);
    CHECK(q2.nm.lo > 0.61803);
    CHECK(q2.nm.hi < 0.61804);

    // the generic sweep grinds out the same staircase
    const NuProfile pg = nu_profile(golden_lattice(false), s, XReal(30));
    REQUIRE(pg.steps.size() == 1);
    CHECK(same_up_to_sign(pg.steps[0].z, {-2, 1}));
    const DIv nmg = pg.steps[0].nm.fast();
    CHECK(nmg.lo > 0.381965);
    CHECK(nmg.hi < 0.381967);

    // mu = min(lambda1(Lambda cap C), nu): the lambda part is 1
    const auto lamC = lambda1_in_subspace(G, s);
    const auto m0 = mu_value(prof, lamC, XReal(mpq_class(105, 100)));
    REQUIRE(!m0.empty);
    CHECK(m0.nm.lo > 0.999999);
    CHECK(m0.nm.hi < 1.000001);
    const auto m1 = mu_value(prof, lamC, XReal(2));
    REQUIRE(!m1.empty);
    CHECK(m1.nm.lo > 0.61803);
    CHECK(m1.nm.hi < 0.61804);
}

TEST_CASE("nu staircase of a real quadratic ring lattice") {
    // x = (p + q sqrt 2, p - q sqrt 2): |Nm| = |p^2 - 2 q^2| >= 1, admissible
    const XReal r2 = sqrt(XReal(2));
    std::vector<std::vector<XReal>> cols = {{XReal(1), XReal(1)}, {r2, -r2}};
    const Lattice L = Lattice::make(std::move(cols), "Z[sqrt2]");
    const Shape s = Shape::cube(2);

    const NuProfile prof = nu_profile(L, s, XReal(2));
    REQUIRE(!prof.steps.empty());
    CHECK(same_up_to_sign(prof.steps[0].z, {1, 0}));
    CHECK(compare(prof.steps[0].nm, XReal(1)) == 0);

    // strict ball of radius 2 sees only (+-1, 0): nu = 1
    const auto q = prof.nu_below(XReal(2));
    REQUIRE(!q.empty);
    CHECK(q.nm.lo > 0.999999);
    CHECK(q.nm.hi < 1.000001);
    // strict ball of radius 1.4 < sqrt 2 is empty
    CHECK(prof.nu_below(XReal(mpq_class(14, 10))).empty);

    // classical case: no subspace part, mu = nu
    const auto lamC = lambda1_in_subspace(L, s);
    CHECK(!lamC.attained);
    const auto m = mu_value(prof, lamC, XReal(2));
    REQUIRE(!m.empty);
    CHECK(m.nm.lo > 0.999999);
}

TEST_CASE("points obey |x| >= Nm^{1/t} on the staircase") {
    const Shape s = Shape::make({1, 1}, {mpq_class(1), mpq_class(1)}, {1});
    const NuProfile prof = nu_profile(golden_lattice(false), s, XReal(50));
    for (const auto& st : prof.steps) {
        // t = 2 here: rho^2 >= nm, strictly for these points
        CHECK(compare(st.rho * st.rho, st.nm) > 0);
    }
}

TEST_CASE("budgets are enforced") {
    EnumOptions tiny;
    tiny.budget = 8;
    const BoxSpec big = planar_box(0, 0, 50, 50);
    CHECK_THROWS_AS(count_points(golden_lattice(false), big, tiny), budget_error);
    CHECK_THROWS_AS(count_points(golden_lattice(true), big, tiny), budget_error);
}
