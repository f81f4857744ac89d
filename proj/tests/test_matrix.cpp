#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabfree/construct.hpp"
#include "stabfree/parse.hpp"
#include "stabfree/random.hpp"

using namespace stabfree;

namespace {

GroupRing z_ring() { return GroupRing{CoeffRing::make({}, {}, 0), 0}; }

RMatrix random_factor_product(const GroupRing& r, unsigned n, int max_factors,
                              const std::vector<std::pair<CoeffElem, CoeffElem>>& units,
                              Rng& rng) {
    RMatrix m = RMatrix::identity(r, n);
    int k = static_cast<int>(rng.uniform(0, max_factors));
    for (int f = 0; f < k; ++f) {
        if (rng.uniform(0, 3) == 0) {
            std::vector<GrElem> d, dinv;
            for (unsigned q = 0; q < n; ++q) {
                const auto& [u, ui] = units[static_cast<size_t>(rng.uniform(0, units.size() - 1))];
                d.push_back(GrElem::from_coeff(r, u));
                dinv.push_back(GrElem::from_coeff(r, ui));
            }
            m = m * ElemFactor::diagonal(d, dinv).to_matrix(r, n);
        } else {
            unsigned i = static_cast<unsigned>(rng.uniform(0, n - 1));
            unsigned j = static_cast<unsigned>(rng.uniform(0, n - 1));
            if (i == j) continue;
            m = m * ElemFactor::elementary(i, j, GrElem::from_coeff(r, random_coeff(r.coeff, rng)))
                        .to_matrix(r, n);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("matrix plumbing") {
    GroupRing r = fp_cp_group_ring(2, 2);
    Rng rng(3);
    RMatrix i2 = RMatrix::identity(r, 2);
    for (int t = 0; t < 50; ++t) {
        RMatrix a(r, 2), b(r, 2), c(r, 2);
        for (unsigned i = 0; i < 2; ++i)
            for (unsigned j = 0; j < 2; ++j) {
                a.set(i, j, random_element(r, rng));
                b.set(i, j, random_element(r, rng));
                c.set(i, j, random_element(r, rng));
            }
        CHECK(i2 * a == a);
        CHECK((a * b) * c == a * (b * c));
    }

    GrElem x = parse_grelem(r, "x*t");
    RMatrix e = ElemFactor::elementary(0, 1, x).to_matrix(r, 2);
    RMatrix einv = ElemFactor::elementary(0, 1, x).inverse().to_matrix(r, 2);
    CHECK(e * einv == i2);
}

TEST_CASE("whitehead factorization of diag(u, u^-1)") {
    // u == -1 over the integers
    GroupRing z = z_ring();
    GrElem mone = -GrElem::one(z);
    FactorList fl = whitehead_diag(mone, mone);
    CHECK(fl.factors.size() == 6);
    CHECK(fl.all_elementary());
    CHECK(fl.verify());
    CHECK(fl.claimed == RMatrix::diagonal(z, {mone, mone}));

    // u == x with inverse x^3
    GroupRing zx{CoeffRing::make({"x"}, {IntPoly::cyclic(4)}, 0), 0};
    GrElem u = parse_grelem(zx, "x");
    GrElem ui = parse_grelem(zx, "x^3");
    FactorList fx = whitehead_diag(u, ui);
    CHECK(fx.verify());
    CHECK(fx.claimed == RMatrix::diagonal(zx, {u, ui}));

    // u == 1 collapses to the identity
    FactorList f1 = whitehead_diag(GrElem::one(z), GrElem::one(z));
    CHECK(f1.claimed == RMatrix::identity(z, 2));
    CHECK(f1.verify());

    // a wrong inverse is rejected
    CHECK_THROWS_AS(whitehead_diag(u, u), std::invalid_argument);
}

TEST_CASE("commutator factorization hits diag([a,b], 1)") {
    GroupRing r = fp_cp_group_ring(2, 2);
    GrElem alpha = parse_grelem(r, "1 + (1+x)*t");
    GrElem beta = parse_grelem(r, "s");
    FactorList fl = commutator_diag(alpha, alpha, beta, parse_grelem(r, "s^-1"));
    CHECK(fl.factors.size() == 18);
    CHECK(fl.all_elementary());
    CHECK(fl.verify());
    GrElem delta = unit_commutator({2, 2, 1}, r);
    CHECK(fl.claimed == RMatrix::diagonal(r, {delta, GrElem::one(r)}));

    // alpha == beta == 1
    GroupRing z = z_ring();
    FactorList f1 = commutator_diag(GrElem::one(z), GrElem::one(z), GrElem::one(z),
                                    GrElem::one(z));
    CHECK(f1.claimed == RMatrix::identity(z, 2));

    // random unipotent-times-word units
    GroupRing r3 = fp_cp_group_ring(3, 2);
    CoeffElem y = radical_generator(r3.coeff);
    Rng rng(41);
    for (int i = 0; i < 25; ++i) {
        GrElem ua = GrElem::one(r3) + GrElem::from_coeff(r3, y) * random_element(r3, rng);
        GrElem ub = GrElem::one(r3) + GrElem::from_coeff(r3, y) * random_element(r3, rng);
        Word wa = random_word(2, rng, 3), wb = random_word(2, rng, 3);
        GrElem a = ua * GrElem::from_word(r3, wa);
        GrElem ainv = GrElem::from_word(r3, wa.inverse()) * *inverse_unipotent(ua);
        GrElem b = ub * GrElem::from_word(r3, wb);
        GrElem binv = GrElem::from_word(r3, wb.inverse()) * *inverse_unipotent(ub);
        FactorList f = commutator_diag(a, ainv, b, binv);
        CHECK(f.verify());
        CHECK(f.claimed.at(0, 0) == a * b * ainv * binv);
        CHECK(f.claimed.at(1, 1).is_one());
    }
}

TEST_CASE("gaussian diagonalization over prime fields") {
    for (unsigned p : {2u, 3u, 5u}) {
        CoeffRingPtr fp = CoeffRing::make({}, {}, Int(p), true);
        GroupRing r{fp, 0};
        auto units = enumerate_ring_units(fp);
        Rng rng(71 + p);
        for (unsigned n : {2u, 3u}) {
            for (int t = 0; t < 25; ++t) {
                RMatrix a = random_factor_product(r, n, 8, units, rng);
                auto fl = gaussian_diagonalize_field(a);
                REQUIRE(fl.has_value());
                CHECK(fl->verify());
                CHECK(fl->factors.front().kind() == ElemFactor::Kind::Diagonal);
                for (size_t i = 1; i < fl->factors.size(); ++i)
                    CHECK(fl->factors[i].kind() == ElemFactor::Kind::Elementary);
            }
        }
        // singular input is reported, not factored
        RMatrix z(r, 2);
        CHECK_FALSE(gaussian_diagonalize_field(z).has_value());
    }
}

TEST_CASE("diagonal reduction through the radical") {
    GroupRing r2 = fp_cp_group_ring(2, 0);
    CoeffElem y2 = radical_generator(r2.coeff);
    RMatrix a(r2, 2);
    a.set(0, 0, GrElem::one(r2));
    a.set(1, 1, GrElem::one(r2));
    a.set(0, 1, GrElem::from_coeff(r2, y2));
    a.set(1, 0, GrElem::from_coeff(r2, y2));
    auto fl = diagonal_reduce_nilpotent(a, radical_quotient(r2.coeff));
    REQUIRE(fl.has_value());
    CHECK(fl->verify());
    CHECK(fl->claimed == a);

    // identity reduces to an identity diagonal and no elementary factors
    auto fi = diagonal_reduce_nilpotent(RMatrix::identity(r2, 3), radical_quotient(r2.coeff));
    REQUIRE(fi.has_value());
    CHECK(fi->verify());
    CHECK(fi->factors.size() == 1);
    CHECK(fi->factors[0].kind() == ElemFactor::Kind::Diagonal);

    // a visibly singular matrix fails at the quotient step
    RMatrix zero(r2, 2);
    CHECK_FALSE(diagonal_reduce_nilpotent(zero, radical_quotient(r2.coeff)).has_value());

    for (unsigned p : {2u, 3u, 5u}) {
        GroupRing r = fp_cp_group_ring(p, 0);
        auto units = enumerate_ring_units(r.coeff);
        Rng rng(101 + p);
        for (unsigned n : {2u, 3u}) {
            for (int t = 0; t < 12; ++t) {
                RMatrix m = random_factor_product(r, n, 12, units, rng);
                auto f = diagonal_reduce_nilpotent(m, radical_quotient(r.coeff));
                REQUIRE(f.has_value());
                CHECK(f->verify());
                CHECK(f->factors.front().kind() == ElemFactor::Kind::Diagonal);
            }
        }
    }
}

TEST_CASE("diagonal factors commute to the front without changing the product") {
    GroupRing r = fp_cp_group_ring(3, 2);
    auto units = enumerate_ring_units(r.coeff);
    Rng rng(83);
    for (int t = 0; t < 40; ++t) {
        std::vector<ElemFactor> factors;
        RMatrix prod = RMatrix::identity(r, 2);
        int k = static_cast<int>(rng.uniform(1, 6));
        for (int f = 0; f < k; ++f) {
            if (rng.flip()) {
                std::vector<GrElem> d, dinv;
                for (int q = 0; q < 2; ++q) {
                    const auto& [u, ui] =
                        units[static_cast<size_t>(rng.uniform(0, units.size() - 1))];
                    d.push_back(GrElem::from_coeff(r, u));
                    dinv.push_back(GrElem::from_coeff(r, ui));
                }
                factors.push_back(ElemFactor::diagonal(d, dinv));
            } else {
                unsigned i = rng.flip() ? 0 : 1;
                factors.push_back(
                    ElemFactor::elementary(i, 1 - i, random_element(r, rng)));
            }
            prod = prod * factors.back().to_matrix(r, 2);
        }
        FactorList fl = normalize_diag_front(factors, prod);
        CHECK(fl.verify());
        CHECK(fl.factors.front().kind() == ElemFactor::Kind::Diagonal);
        for (size_t i = 1; i < fl.factors.size(); ++i)
            CHECK(fl.factors[i].kind() == ElemFactor::Kind::Elementary);
    }
}

TEST_CASE("diagonal factors require verified inverses") {
    GroupRing r = fp_cp_group_ring(2, 0);
    CoeffElem y = radical_generator(r.coeff);
    CHECK_THROWS_AS(
        ElemFactor::diagonal({GrElem::from_coeff(r, y)}, {GrElem::from_coeff(r, y)}),
        std::invalid_argument);
}
