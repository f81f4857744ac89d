#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabfree/coeff.hpp"
#include "stabfree/parse.hpp"
#include "stabfree/random.hpp"

using namespace stabfree;

namespace {

CoeffRingPtr zx4() { return CoeffRing::make({"x"}, {IntPoly::cyclic(4)}, 0); }
CoeffRingPtr f2c2() { return CoeffRing::make({"x"}, {IntPoly::cyclic(2)}, 2, true); }
CoeffRingPtr f3c3() { return CoeffRing::make({"x"}, {IntPoly::cyclic(3)}, 3, true); }
CoeffRingPtr gauss() { return CoeffRing::make({"x"}, {cyclotomic_poly(4)}, 0, false, true); }

CoeffElem ce(const CoeffRingPtr& r, const char* text) { return parse_coeff(r, text); }

}  // namespace

TEST_CASE("exponent reduction in cyclic quotients") {
    auto r = zx4();
    CHECK(ce(r, "x^3") * ce(r, "x^2") == ce(r, "x"));
    CHECK(ce(r, "x^4") == ce(r, "1"));
}

TEST_CASE("characteristic-2 squares vanish") {
    auto r = f2c2();
    CoeffElem a = ce(r, "1 + x");
    CHECK((a * a).is_zero());
}

TEST_CASE("defining relation of the gaussian integers") {
    auto r = gauss();
    CHECK(ce(r, "x") * ce(r, "x") == ce(r, "-1"));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1) == parse_intpoly("x", "x - 1"));
    CHECK(cyclotomic_poly(4) == parse_intpoly("x", "x^2 + 1"));
    CHECK(cyclotomic_poly(9) == parse_intpoly("x", "x^6 + x^3 + 1"));
    CHECK(cyclotomic_poly(25) == parse_intpoly("x", "x^20 + x^15 + x^10 + x^5 + 1"));

    // product over divisors recovers x^n - 1
    for (unsigned n = 1; n <= 30; ++n) {
        IntPoly prod = IntPoly::constant(1);
        for (unsigned d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * cyclotomic_poly(d);
        CHECK(prod == IntPoly::cyclic(n));
    }
}

TEST_CASE("cyclotomic identity quotient") {
    CHECK(cyclotomic_identity_quotient(2) == IntPoly::constant(1));
    CHECK(cyclotomic_identity_quotient(3) == parse_intpoly("x", "x^3 + 2"));
    CHECK(cyclotomic_identity_quotient(5) == parse_intpoly("x", "x^15 + 2*x^10 + 3*x^5 + 4"));
    // exact identity, recomputed here with plain polynomial arithmetic
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        IntPoly q = cyclotomic_identity_quotient(p);
        CHECK(cyclotomic_poly(p * p) - q * IntPoly::cyclic(p) == IntPoly::constant(Int(p)));
    }
    CHECK_THROWS_AS(cyclotomic_identity_quotient(4), std::invalid_argument);
}

TEST_CASE("hom application and construction checks") {
    auto zc2 = CoeffRing::make({"x"}, {IntPoly::cyclic(2)}, 0);
    auto base = f2c2();
    CoeffHom psi_plus(zc2, base, {ce(base, "x")});
    CHECK(psi_plus.apply(ce(zc2, "3 + 2*x")) == ce(base, "1"));

    CoeffHom psi_minus(gauss(), base, {ce(base, "x")});
    CHECK(psi_minus.apply(ce(gauss(), "x")) == ce(base, "x"));

    // x killed to 1 on the bottom of the two-variable square
    auto am = CoeffRing::make({"x", "y"}, {parse_intpoly("x", "1 + x"), IntPoly::cyclic(2)}, 0);
    auto b2 = CoeffRing::make({"y"}, {IntPoly::cyclic(2)}, 2, true);
    CoeffHom phi(am, b2, {ce(b2, "1"), ce(b2, "y")});
    CHECK(phi.apply(ce(am, "y")) == ce(b2, "y"));
    CHECK(phi.apply(ce(am, "3")) == ce(b2, "1"));

    // image violating a source relation is rejected
    CHECK_THROWS_AS(CoeffHom(gauss(), base, {ce(base, "1 + x")}), std::invalid_argument);
    // characteristic cannot grow backwards
    CHECK_THROWS_AS(CoeffHom(base, zc2, {ce(zc2, "x")}), std::invalid_argument);
}

TEST_CASE("hom composition equals composed application") {
    auto zc2 = CoeffRing::make({"x"}, {IntPoly::cyclic(2)}, 0);
    auto base = f2c2();
    CoeffHom f(zc2, zc2, {ce(zc2, "x")});
    CoeffHom g(zc2, base, {ce(base, "x")});
    CoeffHom gf = CoeffHom::compose(g, f);
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        CoeffElem a = random_coeff(zc2, rng, 3, 9);
        CoeffElem b = random_coeff(zc2, rng, 3, 9);
        CHECK(gf.apply(a) == g.apply(f.apply(a)));
        CHECK(g.apply(a * b) == g.apply(a) * g.apply(b));
        CHECK(g.apply(a + b) == g.apply(a) + g.apply(b));
    }
    CHECK(g.apply(ce(zc2, "1")).is_one());
}

TEST_CASE("unit inversion in a local ring") {
    auto r = f3c3();
    // 1 + y with y = 1 - x
    CoeffElem a = ce(r, "2 + 2*x");
    auto inv = coeff_unit_inverse(a);
    REQUIRE(inv.has_value());
    CHECK(*inv == ce(r, "1 + 2*x + x^2"));  // 1 - y + y^2
    CHECK(a * *inv == ce(r, "1"));

    // augmentation zero is not a unit
    CHECK_FALSE(coeff_unit_inverse(ce(f2c2(), "1 + x")).has_value());
}

TEST_CASE("trivial monomial units in characteristic zero") {
    auto r = zx4();
    auto inv = coeff_unit_inverse(ce(r, "x^3"));
    REQUIRE(inv.has_value());
    CHECK(*inv == ce(r, "x"));
    CHECK(coeff_unit_inverse(ce(r, "-x")).has_value());
    CHECK_FALSE(coeff_unit_inverse(ce(r, "2")).has_value());
    CHECK_FALSE(coeff_unit_inverse(ce(r, "1 + x")).has_value());

    // the variable stays invertible modulo an irreducible cyclotomic factor
    auto zi = gauss();
    auto xi = coeff_unit_inverse(ce(zi, "x"));
    REQUIRE(xi.has_value());
    CHECK(ce(zi, "x") * *xi == ce(zi, "1"));
}

TEST_CASE("local units are exactly the augmentation-nonzero elements") {
    for (unsigned p : {2u, 3u}) {
        auto r = CoeffRing::make({"x"}, {IntPoly::cyclic(p)}, Int(p), true);
        auto units = enumerate_ring_units(r);
        size_t expect = 1;
        for (unsigned i = 0; i < p; ++i) expect *= p;
        expect -= expect / p;
        CHECK(units.size() == expect);
        for (const auto& [u, ui] : units) {
            CHECK(u.eval_all_ones() != 0);
            CHECK(u * ui == ce(r, "1"));
        }
    }
}

TEST_CASE("ring axioms on random elements") {
    std::vector<CoeffRingPtr> rings = {zx4(), f2c2(), f3c3(), gauss(),
                                       CoeffRing::make({"x", "y"},
                                                       {IntPoly::cyclic(2), IntPoly::cyclic(2)},
                                                       0)};
    Rng rng(11);
    for (const auto& r : rings) {
        CoeffElem one = CoeffElem::from_int(r, 1);
        for (int i = 0; i < 150; ++i) {
            CoeffElem a = random_coeff(r, rng), b = random_coeff(r, rng), c = random_coeff(r, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * one == a);
            CHECK((a - a).is_zero());
        }
    }
}

TEST_CASE("canonical form invariants") {
    auto r = f3c3();
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        CoeffElem a = random_coeff(r, rng);
        for (const auto& [e, c] : a.terms()) {
            CHECK(c > 0);
            CHECK(c < 3);
            CHECK(e[0] < 3);
        }
    }
    CHECK(ce(r, "3").is_zero());
    CHECK(ce(r, "4") == ce(r, "1"));
    CHECK(ce(zx4(), "2 - 5*x").height() == 5);
    CHECK(ce(zx4(), "2 - 5*x").eval_all_ones() == -3);
}

TEST_CASE("ring mismatch is rejected") {
    CHECK_THROWS_AS(ce(zx4(), "x") + ce(f2c2(), "x"), std::invalid_argument);
}

TEST_CASE("ring construction rejects malformed presentations") {
    CHECK_THROWS_AS(CoeffRing::make({"x"}, {}, 0), std::invalid_argument);
    CHECK_THROWS_AS(CoeffRing::make({"x"}, {IntPoly::constant(2)}, 0), std::invalid_argument);
    CHECK_THROWS_AS(CoeffRing::make({"x", "x"},
                                    {IntPoly::cyclic(2), IntPoly::cyclic(2)}, 0),
                    std::invalid_argument);
    // the local flag is reserved for prime characteristic
    CHECK_THROWS_AS(CoeffRing::make({"x"}, {IntPoly::cyclic(4)}, 4, true),
                    std::invalid_argument);
    CHECK_THROWS_AS(CoeffRing::make({"x"}, {IntPoly::cyclic(2)}, 0, true),
                    std::invalid_argument);
}
