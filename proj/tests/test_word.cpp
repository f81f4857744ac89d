#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabfree/parse.hpp"
#include "stabfree/random.hpp"
#include "stabfree/word.hpp"

using namespace stabfree;

namespace {

Word W(const char* text) { return parse_word(2, text); }

Word nonzero_ab_word(Rng& rng, int max_letters) {
    for (;;) {
        Word w = random_word(2, rng, max_letters);
        if (w.is_identity()) continue;
        auto ab = abelianization(w, 2);
        if (ab[0] != 0 || ab[1] != 0) return w;
    }
}

}  // namespace

TEST_CASE("reduced multiplication") {
    CHECK(W("s") * W("s^-1") == Word());
    CHECK(W("s*t") * W("t^-1*s") == W("s^2"));
    CHECK(W("t^3") * W("t^2") == W("t^5"));
}

TEST_CASE("inverse") {
    CHECK(W("s*t^-2").inverse() == W("t^2*s^-1"));
    CHECK(Word().inverse() == Word());
    CHECK(W("s*t").inverse().inverse() == W("s*t"));
}

TEST_CASE("group laws on random words") {
    Rng rng(17);
    for (int i = 0; i < 500; ++i) {
        Word u = random_word(2, rng, 6), v = random_word(2, rng, 6), w = random_word(2, rng, 6);
        CHECK((u * v) * w == u * (v * w));
        CHECK(u * u.inverse() == Word());
        CHECK((u * v) * v.inverse() == u);
        CHECK((u * v).length() <= u.length() + v.length());
    }
}

TEST_CASE("cyclic reduction") {
    auto cr = cyclically_reduce(W("s*t*s^-1"));
    CHECK(cr.core == W("t"));
    CHECK(cr.conjugator == W("s"));

    cr = cyclically_reduce(W("t^5"));
    CHECK(cr.core == W("t^5"));
    CHECK(cr.conjugator == Word());

    cr = cyclically_reduce(W("s^2*t*s^-1"));
    CHECK(cr.core == W("s*t"));
    CHECK(cr.conjugator == W("s"));

    Rng rng(23);
    for (int i = 0; i < 300; ++i) {
        Word w = random_word(2, rng, 8);
        auto r = cyclically_reduce(w);
        CHECK(r.conjugator * r.core * r.conjugator.inverse() == w);
    }
}

TEST_CASE("primitive roots and power tests") {
    CHECK(primitive_root(W("t^5")) == W("t"));
    CHECK(primitive_root((W("s*t")).pow(3)) == W("s*t"));
    CHECK(primitive_root(W("s*t^2*s^-1")) == W("s*t*s^-1"));

    CHECK(power_exponent(W("t"), W("t^7")) == 7);
    CHECK(power_exponent(W("t"), W("t^-3")) == -3);
    CHECK(power_exponent(W("t"), Word()) == 0);
    CHECK_FALSE(power_exponent(W("t"), W("s")).has_value());
    CHECK_FALSE(power_exponent(W("s*t"), W("s*t*s*t*s")).has_value());
}

TEST_CASE("conjugation equations") {
    auto sol = solve_conjugation(W("t"), W("t"));
    REQUIRE(sol.has_value());
    CHECK(sol->base == Word());
    CHECK(sol->root == W("t"));

    sol = solve_conjugation(W("t"), W("s*t*s^-1"));
    REQUIRE(sol.has_value());
    CHECK(sol->base * W("t") * sol->base.inverse() == W("s*t*s^-1"));
    CHECK(sol->root == W("t"));

    CHECK_FALSE(solve_conjugation(W("t"), W("s*t^2*s^-1")).has_value());
    CHECK_THROWS_AS(solve_conjugation(Word(), W("t")), std::invalid_argument);
}

TEST_CASE("solve_conjugation finds the full conjugator coset") {
    Rng rng(31);
    for (int i = 0; i < 400; ++i) {
        Word g = random_word(2, rng, 5);
        if (g.is_identity()) continue;
        Word w = random_word(2, rng, 5);
        auto sol = solve_conjugation(g, w * g * w.inverse());
        REQUIRE(sol.has_value());
        // the returned coset contains w
        CHECK(power_exponent(sol->root, sol->base.inverse() * w).has_value());
    }
}

TEST_CASE("coset intersection, planted instances") {
    Rng rng(47);
    for (int i = 0; i < 400; ++i) {
        Word r1 = nonzero_ab_word(rng, 4);
        Word r2 = nonzero_ab_word(rng, 4);
        Word point = random_word(2, rng, 4);
        Word w1 = point * r1.pow(rng.uniform(-12, 12));
        Word w2 = point * r2.pow(rng.uniform(-12, 12));
        auto found = coset_intersect(w1, r1, w2, r2);
        REQUIRE(found.has_value());
        CHECK(power_exponent(r1, w1.inverse() * *found).has_value());
        CHECK(power_exponent(r2, w2.inverse() * *found).has_value());
    }

    // roots with equal power growth but different conjugator padding
    Word r1 = W("t");
    Word r2 = W("s^2*t*s^-2");
    auto found = coset_intersect(W("t^7"), r1, W("t*s^2*t^8*s^-2"), r2);
    REQUIRE(found.has_value());
    CHECK(power_exponent(r1, W("t^7").inverse() * *found).has_value());
    CHECK(power_exponent(r2, (W("t*s^2*t^8*s^-2")).inverse() * *found).has_value());
}

TEST_CASE("coset intersection agrees with bounded enumeration") {
    Rng rng(53);
    for (int i = 0; i < 200; ++i) {
        Word r1 = nonzero_ab_word(rng, 3);
        Word r2 = nonzero_ab_word(rng, 3);
        Word w1 = random_word(2, rng, 3);
        Word w2 = random_word(2, rng, 3);
        bool brute = false;
        for (long long a = -6; a <= 6 && !brute; ++a)
            for (long long b = -6; b <= 6 && !brute; ++b)
                brute = w1 * r1.pow(a) == w2 * r2.pow(b);
        auto found = coset_intersect(w1, r1, w2, r2);
        if (brute) {
            REQUIRE(found.has_value());
        }
        if (found) {
            CHECK(power_exponent(r1, w1.inverse() * *found).has_value());
            CHECK(power_exponent(r2, w2.inverse() * *found).has_value());
        }
    }
}

TEST_CASE("the double conjugation system has no solution for distinct indices") {
    // w t w^-1 == t and w s^j t s^-j w^-1 == s^i t s^-i solvable iff i == j
    for (unsigned i = 1; i <= 6; ++i)
        for (unsigned j = 1; j <= 6; ++j) {
            Word target = W("s").pow(i) * W("t") * W("s").pow(-(long long)i);
            Word moved = W("s").pow(j) * W("t") * W("s").pow(-(long long)j);
            auto e1 = solve_conjugation(W("t"), W("t"));
            auto e2 = solve_conjugation(moved, target);
            REQUIRE(e1.has_value());
            REQUIRE(e2.has_value());
            auto common = coset_intersect(e1->base, e1->root, e2->base, e2->root);
            CHECK(common.has_value() == (i == j));
            if (common) CHECK(*common == Word());
        }
}
