#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetform/jets.hpp"
#include "support.hpp"

using namespace jetform;
using jetform::testing::TestRng;
using jetform::testing::random_diffeo;
using jetform::testing::random_series;
using jetform::testing::random_unit;

namespace {

Series sv(int nvars, int order, int var) { return Series::variable(nvars, order, var); }

}  // namespace

TEST_CASE("series arithmetic basics") {
    int N = 8;
    Series x = sv(2, N, 0), y = sv(2, N, 1);

    SUBCASE("add") {
        Series s = x + y;
        CHECK(s.coeff(keys::unit(0)) == 1);
        CHECK(s.coeff(keys::unit(1)) == 1);
        CHECK(s.terms().size() == 2);
    }
    SUBCASE("(1+x)(1-x) = 1-x^2") {
        Series one = Series::constant(2, N, 1);
        Series p = (one + x) * (one - x);
        Series expect = one - x * x;
        CHECK(p == expect);
    }
    SUBCASE("(y+x^2)^2 = y^2 + 2x^2y + x^4") {
        Series f = y + x * x;
        Series sq = f * f;
        Series expect = y * y + rat(2) * (x * x * y) + x * x * x * x;
        CHECK(sq == expect);
    }
    SUBCASE("truncation order of product is the min") {
        Series a = x.truncated(5), b = y.truncated(3);
        CHECK((a * b).order() == 3);
        CHECK((a + b).order() == 3);
    }
    SUBCASE("mul truncates beyond order") {
        Series f = Series::constant(2, 2, 1) + x;
        Series g = f * f * f;  // 1 + 3x + 3x^2 + [x^3 dropped]
        CHECK(g.order() == 2);
        CHECK(g.coeff(std::array{2, 0}) == 3);
        CHECK(g.coeff(std::array{1, 0}) == 3);
        CHECK(g.terms().size() == 3);
    }
}

TEST_CASE("partial derivatives") {
    int N = 8;
    Series x = sv(2, N, 0), y = sv(2, N, 1);
    Series f = y + x * x;
    CHECK(f.partial(0) == (rat(2) * x).truncated(N - 1));
    CHECK(f.partial(1) == Series::constant(2, N - 1, 1));

    Series p1 = sv(4, N, 2), q1 = sv(4, N, 3);
    Series g = p1 * q1 * q1;
    CHECK(g.partial(3) == (rat(2) * (p1 * q1)).truncated(N - 1));
}

TEST_CASE("composition") {
    int N = 8;
    Series x = sv(2, N, 0), y = sv(2, N, 1);

    SUBCASE("compose(y, (x, y - x^2/2))") {
        PointMap phi(2, {x, y - rat(1, 2) * (x * x)});
        CHECK(compose(y, phi) == y - rat(1, 2) * (x * x));
    }
    SUBCASE("compose(y + x^2, (x, y - x^2)) = y") {
        PointMap phi(2, {x, y - x * x});
        CHECK(compose(y + x * x, phi) == y);
    }
    SUBCASE("compose(2y, (x, y/2)) = y") {
        PointMap phi(2, {x, rat(1, 2) * y});
        CHECK(compose(rat(2) * y, phi) == y);
    }
    SUBCASE("identity neutral") {
        TestRng rng(11);
        Series f = random_series(rng, 3, 6, 10);
        CHECK(compose(f, PointMap::identity(3, 6)) == f);
    }
    SUBCASE("associativity through map composition") {
        TestRng rng(21);
        for (int it = 0; it < 25; ++it) {
            int nv = rng.int_in(2, 4);
            Series f = random_series(rng, nv, 6, 8);
            PointMap phi = random_diffeo(rng, nv, 6);
            PointMap psi = random_diffeo(rng, nv, 6);
            CHECK(compose(compose(f, phi), psi) == compose(f, compose_map(phi, psi)));
        }
    }
}

TEST_CASE("map inversion") {
    int N = 8;
    Series x = sv(2, N, 0), y = sv(2, N, 1);

    SUBCASE("identity") { CHECK(invert(PointMap::identity(2, N)) == PointMap::identity(2, N)); }
    SUBCASE("triangular shift") {
        PointMap phi(2, {x, y + x * x});
        PointMap inv = invert(phi);
        CHECK(inv.component(0) == x);
        CHECK(inv.component(1) == y - x * x);
    }
    SUBCASE("linear rescale") {
        PointMap phi(2, {rat(2) * x, y});
        PointMap inv = invert(phi);
        CHECK(inv.component(0) == rat(1, 2) * x);
    }
    SUBCASE("singular jacobian rejected") {
        PointMap phi(2, {x, x + y * y});
        // second row of the jacobian is zero in y only when...
        PointMap bad(2, {x + y, x + y});
        CHECK_THROWS_AS(invert(bad), SingularJacobian);
        (void)phi;
    }
    SUBCASE("round trips, dims 2/4/6") {
        TestRng rng(5);
        for (int nv : {2, 4, 6}) {
            int order = nv == 6 ? 5 : 6;
            for (int it = 0; it < 100; ++it) {
                PointMap phi = random_diffeo(rng, nv, order);
                PointMap psi = invert(phi);
                CHECK(compose_map(phi, psi) == PointMap::identity(nv, order));
                CHECK(compose_map(psi, phi) == PointMap::identity(nv, order));
            }
        }
    }
}

TEST_CASE("weierstrass preparation") {
    int N = 8;

    SUBCASE("h = y + x^2") {
        Series x = sv(2, N, 0), y = sv(2, N, 1);
        auto w = weierstrass_prepare(y + x * x, 0);
        CHECK(w.unit == Series::constant(2, N - 2, 1));
        CHECK(w.a.is_zero());
        CHECK(w.b == sv(1, N - 1, 0));
    }
    SUBCASE("h = 2y + x^2") {
        Series x = sv(2, N, 0), y = sv(2, N, 1);
        auto w = weierstrass_prepare(rat(2) * y + x * x, 0);
        CHECK(w.unit == Series::constant(2, N - 2, 1));
        CHECK(w.a.is_zero());
        CHECK(w.b == (rat(2) * sv(1, N - 1, 0)));
    }
    SUBCASE("h = y + x^2 + x*y back-multiplies") {
        int order = 10;
        Series x = sv(2, order, 0), y = sv(2, order, 1);
        Series h = y + x * x + x * y;
        auto w = weierstrass_prepare(h, 0);
        CHECK(w.unit.at_zero() == 1);
        Series qx = sv(2, w.unit.order(), 0);
        Series quad = qx * qx + insert_var(w.a, 0) * qx + insert_var(w.b, 0);
        Series prod = w.unit * quad;
        CHECK(agree_to_order(prod, h.truncated(prod.order()), 8));
    }
    SUBCASE("precondition violations") {
        Series x = sv(2, N, 0), y = sv(2, N, 1);
        CHECK_THROWS_AS(weierstrass_prepare(y + x, 0), PreconditionViolated);
        CHECK_THROWS_AS(weierstrass_prepare(y + x * x * x, 0), PreconditionViolated);
        CHECK_THROWS_AS(weierstrass_prepare(Series::constant(2, N, 1) + y + x * x, 0),
                        PreconditionViolated);
    }
    SUBCASE("random back-multiplication") {
        TestRng rng(92);
        for (int it = 0; it < 100; ++it) {
            int nv = rng.int_in(2, 4);
            int order = 9;
            Series x = sv(nv, order, 0);
            Series h = random_series(rng, nv, order, 8, 1);
            // force the tangency shape
            h = h - Series::constant(nv, order, h.at_zero());
            h = h - h.coeff(keys::unit(0)) * x;
            Series xx = x * x;
            h = h + (rat(1) - h.coeff(keys::unit(0) * 2)) * xx;
            auto w = weierstrass_prepare(h, 0);
            Series qx = sv(nv, w.unit.order(), 0);
            Series quad = qx * qx + insert_var(w.a, 0) * qx + insert_var(w.b, 0);
            Series prod = w.unit * quad;
            CHECK(agree_to_order(prod, h.truncated(prod.order()), order - 2));
        }
    }
}

TEST_CASE("parabola division") {
    int N = 8;

    SUBCASE("r = y + x^2 -> 1") {
        Series x = sv(2, N, 0), y = sv(2, N, 1);
        CHECK(divide_by_parabola(y + x * x, 0, 1) == Series::constant(2, N - 1, 1));
    }
    SUBCASE("r = y^2 - x^4 -> y - x^2") {
        Series x = sv(2, N, 0), y = sv(2, N, 1);
        Series r = y * y - x * x * x * x;
        CHECK(divide_by_parabola(r, 0, 1) == (y - x * x).truncated(N - 1));
    }
    SUBCASE("r = (y+x^2)(1+p1) -> 1+p1") {
        Series x = sv(4, N, 0), y = sv(4, N, 1), p1 = sv(4, N, 2);
        Series r = (y + x * x) * (Series::constant(4, N, 1) + p1);
        CHECK(divide_by_parabola(r, 0, 1) == (Series::constant(4, N - 1, 1) + p1.truncated(N - 1)));
    }
    SUBCASE("non-divisible input rejected") {
        Series x = sv(2, N, 0);
        CHECK_THROWS_AS(divide_by_parabola(x, 0, 1), NotDivisible);
    }
    SUBCASE("random s * (y + x^2) recovers s") {
        TestRng rng(3);
        for (int it = 0; it < 100; ++it) {
            int nv = rng.int_in(2, 4);
            Series x = sv(nv, 8, 0), y = sv(nv, 8, 1);
            Series s = random_series(rng, nv, 8, 10);
            Series q = divide_by_parabola(s * (y + x * x), 0, 1);
            CHECK(agree_to_order(q, s.truncated(7), 7));
        }
    }
}

TEST_CASE("variable plumbing") {
    Series x = sv(3, 6, 0), y = sv(3, 6, 1), z = sv(3, 6, 2);
    Series f = x * x + rat(3) * (y * z);

    SUBCASE("swap") {
        Series g = swap_vars(f, 1, 2);
        CHECK(g == f);  // symmetric in y, z
        Series h = swap_vars(x * y, 0, 1);
        CHECK(h == x * y);
        CHECK(swap_vars(x * x, 0, 1) == y * y);
    }
    SUBCASE("drop and insert") {
        Series g = x * x;  // no y, z dependence? depends only on var 0
        Series reduced = drop_var(drop_var(g, 2), 1);
        CHECK(reduced.nvars() == 1);
        CHECK(insert_var(insert_var(reduced, 1), 2) == g);
        CHECK_THROWS_AS(drop_var(f, 1), VariableMismatch);
    }
    SUBCASE("slices reassemble") {
        TestRng rng(7);
        for (int it = 0; it < 50; ++it) {
            Series s = random_series(rng, 3, 6, 12);
            auto parts = slice_coeffs(s, 1);
            CHECK(assemble_slices(parts, 1, 6) == s);
        }
    }
}

TEST_CASE("reciprocal") {
    TestRng rng(13);
    for (int it = 0; it < 50; ++it) {
        int nv = rng.int_in(1, 4);
        Series u = random_unit(rng, nv, 6, 6);
        Series v = reciprocal(u);
        CHECK(u * v == Series::constant(nv, 6, 1));
    }
    CHECK_THROWS_AS(reciprocal(sv(2, 6, 0)), NotDivisible);
}

TEST_CASE("mul commutes / distributes (random)") {
    TestRng rng(31);
    for (int it = 0; it < 100; ++it) {
        int nv = rng.int_in(1, 4);
        Series a = random_series(rng, nv, 7, 8);
        Series b = random_series(rng, nv, 7, 8);
        Series c = random_series(rng, nv, 7, 8);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
    }
}
