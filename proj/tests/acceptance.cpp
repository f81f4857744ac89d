// Acceptance suite: one line per criterion, every check exact and every time
// budget enforced. Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "stabfree/construct.hpp"
#include "stabfree/jsonio.hpp"
#include "stabfree/parse.hpp"
#include "stabfree/random.hpp"

using namespace stabfree;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<void()> body;  // throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

// ---------------------------------------------------------------------------

void criterion_cyclotomic_identity() {
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        IntPoly q = cyclotomic_identity_quotient(p);
        require(cyclotomic_poly(p * p) - q * IntPoly::cyclic(p) == IntPoly::constant(Int(p)),
                "identity fails for p = " + std::to_string(p));
        // coefficient pattern 1, 2, ..., p-1 on x^{p(p-2)}, ..., x^0
        require(q.degree() == (p == 2 ? 0 : static_cast<int>(p * (p - 2))),
                "quotient degree wrong");
        for (unsigned i = 0; i + 1 < p; ++i) {
            require(q.coeff(p * i) == Int(p - 1 - i), "quotient coefficient pattern wrong");
        }
        Int nonzero = 0;
        for (const auto& c : q.coeffs())
            if (c != 0) ++nonzero;
        require(nonzero == p - 1, "quotient has spurious terms");
    }
}

void criterion_square_exactness() {
    std::vector<MilnorSquare> squares;
    for (unsigned p : {2u, 3u, 5u}) {
        squares.push_back(build_square_cp2(p, 2));
        squares.push_back(build_square_cp_cp(p, 2));
    }
    squares.push_back(build_sigma_square({4}, {2}, 2));
    squares.push_back(build_sigma_square({2, 2}, {1, 0}, 2));
    squares.push_back(build_sigma_square({12}, {4}, 2));
    unsigned long seed = 2024;
    for (const auto& sq : squares) {
        ExactnessReport rep = check_exactness(sq, 200, seed++);
        std::string tag = sq.kind + "/k=" + std::to_string(sq.core.k);
        require(rep.ok(), "exactness failures in square " + tag +
                              (rep.counterexamples.empty() ? "" : ": " + rep.counterexamples[0]));
    }
}

void criterion_delta_family() {
    for (unsigned p : {2u, 3u}) {
        GroupRing corner = fp_cp_group_ring(p, 2);
        CoeffElem y = radical_generator(corner.coeff);
        GrElem alpha = GrElem::one(corner) + GrElem::term(corner, Word::generator(1), y);
        auto alpha_inv = inverse_unipotent(alpha);
        require(alpha_inv.has_value(), "1 + y t must invert");
        for (unsigned n = 1; n <= 10; ++n) {
            GrElem delta = unit_commutator({p, 2, n}, corner);
            // the explicit commutator, assembled independently here
            GrElem sig = GrElem::from_word(corner, Word::generator(0).pow(n));
            GrElem sig_inv = GrElem::from_word(corner, Word::generator(0).pow(-(long long)n));
            require(delta == alpha * sig * *alpha_inv * sig_inv,
                    "delta is not the explicit unit commutator");
            // inversion-free form of the same identity
            require(delta * (sig * alpha * sig_inv) == alpha,
                    "delta (s^n alpha s^-n) != alpha");

            YAdicExpansion layers = y_adic_expand(delta);
            require(layers.layers[0] == GrElem::one(layers.scalar_ring), "y^0 layer is not 1");
            Word t = Word::generator(1);
            Word moved = Word::generator(0).pow(n) * t * Word::generator(0).pow(-(long long)n);
            GrElem expect =
                GrElem::term(layers.scalar_ring, t, CoeffElem::from_int(layers.scalar_ring.coeff, 1)) -
                GrElem::term(layers.scalar_ring, moved,
                             CoeffElem::from_int(layers.scalar_ring.coeff, 1));
            require(layers.layers[1] == expect, "y^1 layer is not t - s^n t s^-n");
        }
    }
}

void criterion_distinctness() {
    for (unsigned p : {2u, 3u}) {
        for (unsigned n = 1; n <= 10; ++n)
            for (unsigned n2 = 1; n2 <= 10; ++n2) {
                DistinctnessVerdict v = certify_distinct(p, 2, n, n2);
                if (n == n2) {
                    require(!v.distinct, "diagonal pair certified distinct");
                    require(v.witness.has_value() && v.witness->gamma.is_one() &&
                                v.witness->w == Word(),
                            "diagonal witness is not the identity");
                } else {
                    require(v.distinct, "off-diagonal pair certified equivalent");
                }
                BruteForceReport rep = brute_force_check(p, 2, n, n2, 4);
                require(v.distinct == rep.hits.empty(),
                        "decision and brute force disagree at (" + std::to_string(n) + "," +
                            std::to_string(n2) + "), p = " + std::to_string(p));
                if (n == n2) {
                    bool identity_hit = false;
                    for (const auto& h : rep.hits)
                        if (h.gamma.is_one() && h.w == Word()) identity_hit = true;
                    require(identity_hit, "diagonal brute force misses the identity hit");
                }
            }
    }
}

void criterion_certificates() {
    for (unsigned p : {2u, 3u}) {
        for (unsigned n = 1; n <= 5; ++n) {
            TrivializationCert cert = trivialize(p, 2, n);
            require(cert.lifted.factors.size() <= 18, "more than 18 factors");
            require(cert.lifted.all_elementary(), "non-elementary factor in certificate");
            verify_trivialization(cert);  // exact product and psi_plus image checks
            // the JSON form re-verifies after a round trip
            TrivializationCert back = trivialization_from_json(trivialization_to_json(cert));
            verify_trivialization(back);
        }
    }
}

void criterion_euclidean_lifting() {
    Rng rng(4242);
    int total = 0;
    for (unsigned p : {2u, 3u, 5u}) {
        GroupRing ring = fp_cp_group_ring(p, 0);
        auto units = enumerate_ring_units(ring.coeff);
        NilpotentQuotient nq = radical_quotient(ring.coeff);
        for (unsigned n : {2u, 3u}) {
            for (int rep = 0; rep < 17; ++rep) {
                RMatrix m = RMatrix::identity(ring, n);
                int k = static_cast<int>(rng.uniform(1, 12));
                for (int f = 0; f < k; ++f) {
                    if (rng.uniform(0, 3) == 0) {
                        std::vector<GrElem> d, dinv;
                        for (unsigned q = 0; q < n; ++q) {
                            const auto& [u, ui] =
                                units[static_cast<size_t>(rng.uniform(0, units.size() - 1))];
                            d.push_back(GrElem::from_coeff(ring, u));
                            dinv.push_back(GrElem::from_coeff(ring, ui));
                        }
                        m = m * ElemFactor::diagonal(d, dinv).to_matrix(ring, n);
                    } else {
                        unsigned i = static_cast<unsigned>(rng.uniform(0, n - 1));
                        unsigned j = static_cast<unsigned>(rng.uniform(0, n - 1));
                        if (i == j) continue;
                        m = m *
                            ElemFactor::elementary(i, j,
                                                   GrElem::from_coeff(ring, random_coeff(ring.coeff, rng)))
                                .to_matrix(ring, n);
                    }
                }
                auto fl = diagonal_reduce_nilpotent(m, nq);
                require(fl.has_value(), "reduction failed on an invertible matrix");
                require(fl->verify(), "reduction product mismatch");
                require(fl->factors.front().kind() == ElemFactor::Kind::Diagonal,
                        "result is not diagonal-then-elementary");
                for (size_t f = 1; f < fl->factors.size(); ++f)
                    require(fl->factors[f].kind() == ElemFactor::Kind::Elementary,
                            "result is not diagonal-then-elementary");
                ++total;
            }
        }
    }
    require(total >= 100, "fewer than 100 matrices exercised");
}

void criterion_unit_evidence() {
    // gaussian-integer coefficients over the free group: trivial units only
    GroupRing zeta4{CoeffRing::make({"x"}, {cyclotomic_poly(4)}, 0, false, true), 2};
    UnitSearchResult r1 = unit_search(zeta4, 2, 2, 2);
    require(r1.nontrivial_units.empty(), "nontrivial unit reported over Z[zeta_4][F_2]");
    for (const auto& [u, ui] : r1.unit_pairs)
        require(u.support_size() == 1, "unit with support > 1 over Z[zeta_4][F_2]");

    // integer coefficients: only +/- words
    GroupRing zf2{CoeffRing::make({}, {}, 0, false, true), 2};
    UnitSearchResult r2 = unit_search(zf2, 2, 2, 2);
    require(r2.nontrivial_units.empty(), "nontrivial unit reported over Z[F_2]");
    for (const auto& [u, ui] : r2.unit_pairs) {
        require(u.support_size() == 1, "unit with support > 1 over Z[F_2]");
        const auto& [w, c] = *u.terms().begin();
        require(c.nterms() == 1 && (c.terms().begin()->second == 1 ||
                                    c.terms().begin()->second == -1),
                "non-trivial coefficient in a Z[F_2] unit");
    }

    // negative control: the finite local ring has exactly its two units
    GroupRing f2c2 = fp_cp_group_ring(2, 0);
    UnitSearchResult r3 = unit_search(f2c2, 1, 1, 0);
    require(r3.unit_pairs.size() == 2, "expected exactly two units in F_2[C_2]");
    bool saw_one = false, saw_x = false;
    for (const auto& [u, ui] : r3.unit_pairs) {
        if (u.is_one()) saw_one = true;
        if (u == parse_grelem(f2c2, "x")) saw_x = true;
    }
    require(saw_one && saw_x, "local units of F_2[C_2] not found");
}

void criterion_property_suites() {
    // ring axioms
    {
        Rng rng(1001);
        std::vector<CoeffRingPtr> rings = {
            CoeffRing::make({"x"}, {IntPoly::cyclic(4)}, 0),
            CoeffRing::make({"x"}, {cyclotomic_poly(9)}, 0, false, true),
            fp_cp_group_ring(3, 0).coeff};
        int cases = 0;
        for (const auto& r : rings) {
            CoeffElem one = CoeffElem::from_int(r, 1);
            for (int i = 0; i < 170; ++i, ++cases) {
                CoeffElem a = random_coeff(r, rng), b = random_coeff(r, rng),
                          c = random_coeff(r, rng);
                require((a * b) * c == a * (b * c), "associativity failed");
                require(a * b == b * a, "commutativity failed");
                require(a * (b + c) == a * b + a * c, "distributivity failed");
                require(a * one == a, "unit law failed");
            }
        }
        require(cases >= 500, "not enough ring axiom cases");
    }
    // hom multiplicativity
    {
        Rng rng(1002);
        MilnorSquare sq = build_square_cp2(3, 2);
        for (int i = 0; i < 500; ++i) {
            GrElem a = random_element(sq.fibre, rng), b = random_element(sq.fibre, rng);
            require(apply_hom(sq.pi_minus, a * b) ==
                        apply_hom(sq.pi_minus, a) * apply_hom(sq.pi_minus, b),
                    "pi_minus not multiplicative");
            require(apply_hom(sq.pi_plus, a + b) ==
                        apply_hom(sq.pi_plus, a) + apply_hom(sq.pi_plus, b),
                    "pi_plus not additive");
        }
    }
    // word reduction laws
    {
        Rng rng(1003);
        for (int i = 0; i < 500; ++i) {
            Word u = random_word(2, rng, 6), v = random_word(2, rng, 6),
                 w = random_word(2, rng, 6);
            require((u * v) * w == u * (v * w), "word associativity failed");
            require(u * u.inverse() == Word(), "word inverse failed");
            require((u * v).length() <= u.length() + v.length(), "reduction grew a word");
        }
    }
    // y-adic round trip
    {
        Rng rng(1004);
        for (unsigned p : {2u, 3u, 5u}) {
            GroupRing r = fp_cp_group_ring(p, 2);
            for (int i = 0; i < 170; ++i) {
                GrElem a = random_element(r, rng);
                require(y_adic_reconstruct(y_adic_expand(a)) == a, "y-adic round trip failed");
            }
        }
    }
    // module membership stability under the action
    {
        Rng rng(1005);
        MilnorSquare sq = build_square_cp2(2, 2);
        GrElem delta = unit_commutator({2, 2, 1}, sq.base);
        Rank1Module mod = glue_rank1(sq, delta, delta);
        for (int i = 0; i < 500; ++i) {
            auto mem = mod.member_from_plus(random_element(sq.plus, rng));
            GrElem f = random_element(sq.fibre, rng);
            auto moved = mod.act(mem, f);
            require(mod.contains(moved.first, moved.second),
                    "module membership not preserved by the action");
        }
    }
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"1 cyclotomic identity (p in {2,3,5,7})", 1.0, criterion_cyclotomic_identity},
        {"2 square exactness (A, B, sigma; 200 pairs each)", 10.0, criterion_square_exactness},
        {"3 delta family layers (p in {2,3}, n <= 10)", 5.0, criterion_delta_family},
        {"4 distinctness decisions vs brute force (100 pairs/prime)", 60.0,
         criterion_distinctness},
        {"5 stably-free certificates (p in {2,3}, n <= 5)", 30.0, criterion_certificates},
        {"6 generalized Euclidean lifting (>= 100 matrices)", 30.0, criterion_euclidean_lifting},
        {"7 trivial-unit evidence (bounded exhaustive searches)", 120.0,
         criterion_unit_evidence},
        {"8 algebra property suites (>= 500 cases each)", 30.0, criterion_property_suites},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool ok = error.empty() && elapsed < c.budget_seconds;
        if (!ok) ++failures;
        std::printf("%s criterion %s (%.2fs / %.0fs)%s%s\n", ok ? "PASS" : "FAIL",
                    c.name.c_str(), elapsed, c.budget_seconds, error.empty() ? "" : " -- ",
                    error.c_str());
    }
    return failures == 0 ? 0 : 1;
}
