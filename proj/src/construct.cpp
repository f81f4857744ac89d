#include "stabfree/construct.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "stabfree/parse.hpp"

namespace stabfree {

namespace {

IntPoly sigma_poly(unsigned e, unsigned k) {
    std::vector<Int> cs(e * (k - 1) + 1, Int(0));
    for (unsigned j = 0; j < k; ++j) cs[j * e] = 1;
    return IntPoly(std::move(cs));
}

bool local_shape(const Int& characteristic, const std::vector<IntPoly>& rels) {
    // F_p[x]/(x^{p^j} - 1) and products of such in one prime p are local
    if (characteristic <= 0 || !characteristic.fits_ulong_p()) return false;
    unsigned long p = characteristic.get_ui();
    if (!is_prime(p)) return false;
    for (const auto& r : rels) {
        unsigned d = static_cast<unsigned>(r.degree());
        if (r != IntPoly::cyclic(d)) return false;
        while (d % p == 0) d /= p;
        if (d != 1) return false;
    }
    return true;
}

// Shared construction: variables with cyclic relations orders[i]; the core
// variable's order e*k splits as sigma * tau.
MilnorSquare build_from_core(std::vector<std::string> vars, std::vector<unsigned> orders,
                             size_t core_var, unsigned e, unsigned k, unsigned m,
                             std::string kind, std::vector<long long> subgroup_gen) {
    const size_t nv = vars.size();
    std::vector<IntPoly> fibre_rels, minus_rels;
    for (size_t i = 0; i < nv; ++i) {
        fibre_rels.push_back(IntPoly::cyclic(orders[i]));
        minus_rels.push_back(i == core_var ? sigma_poly(e, k) : IntPoly::cyclic(orders[i]));
    }
    bool minus_domain = nv == 1 && is_prime(k) && (e == 1 || e == k);

    std::vector<std::string> plus_vars;
    std::vector<IntPoly> plus_rels;
    for (size_t i = 0; i < nv; ++i) {
        if (i == core_var && e == 1) continue;
        plus_vars.push_back(vars[i]);
        plus_rels.push_back(i == core_var ? IntPoly::cyclic(e) : IntPoly::cyclic(orders[i]));
    }

    CoeffRingPtr fr = CoeffRing::make(vars, fibre_rels, 0);
    CoeffRingPtr mr = CoeffRing::make(vars, minus_rels, 0, false, minus_domain);
    CoeffRingPtr pr = CoeffRing::make(plus_vars, plus_rels, 0);
    CoeffRingPtr br =
        CoeffRing::make(plus_vars, plus_rels, Int(k), local_shape(Int(k), plus_rels));

    auto images_into = [&](const CoeffRingPtr& src, const CoeffRingPtr& dst) {
        std::vector<CoeffElem> imgs;
        for (const auto& name : src->variables()) {
            if (auto idx = dst->var_index(name))
                imgs.push_back(CoeffElem::variable(dst, *idx));
            else
                imgs.push_back(CoeffElem::from_int(dst, 1));  // killed variable
        }
        return imgs;
    };

    CoeffHom pi_plus(fr, pr, images_into(fr, pr));
    CoeffHom pi_minus(fr, mr, images_into(fr, mr));
    CoeffHom psi_plus(pr, br, images_into(pr, br));
    CoeffHom psi_minus(mr, br, images_into(mr, br));

    PullbackCore core = build_pullback_core(fr, core_var, e, k);
    return MilnorSquare::make(GroupRing{fr, m}, GroupRing{pr, m}, GroupRing{mr, m},
                              GroupRing{br, m}, std::move(pi_plus), std::move(pi_minus),
                              std::move(psi_plus), std::move(psi_minus), std::move(core),
                              std::move(kind), std::move(orders), std::move(subgroup_gen));
}

void require_prime(unsigned p) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
}

}  // namespace

MilnorSquare build_square_cp2(unsigned p, unsigned m) {
    require_prime(p);
    return build_from_core({"x"}, {p * p}, 0, p, p, m, "A", {});
}

MilnorSquare build_square_cp_cp(unsigned p, unsigned m) {
    require_prime(p);
    return build_from_core({"x", "y"}, {p, p}, 0, 1, p, m, "B", {});
}

MilnorSquare build_sigma_square(const std::vector<unsigned>& invariant_factors,
                                const std::vector<long long>& subgroup_generator, unsigned m) {
    if (invariant_factors.empty()) throw std::invalid_argument("empty group presentation");
    if (subgroup_generator.size() != invariant_factors.size())
        throw std::invalid_argument("subgroup generator has wrong length");
    for (unsigned d : invariant_factors)
        if (d < 2) throw std::invalid_argument("invariant factors must be >= 2");

    size_t core_var = invariant_factors.size();
    for (size_t i = 0; i < invariant_factors.size(); ++i) {
        long long h = subgroup_generator[i] % static_cast<long long>(invariant_factors[i]);
        if (h < 0) h += invariant_factors[i];
        if (h == 0) continue;
        if (core_var != invariant_factors.size())
            throw std::invalid_argument(
                "subgroup generators supported on more than one factor are not supported");
        core_var = i;
    }
    if (core_var == invariant_factors.size())
        throw std::invalid_argument("subgroup is trivial");

    unsigned d = invariant_factors[core_var];
    long long h = subgroup_generator[core_var] % d;
    if (h < 0) h += d;
    unsigned e = std::gcd(static_cast<unsigned>(h), d);
    unsigned k = d / e;
    if (k < 2) throw std::invalid_argument("subgroup is trivial");

    static const std::vector<std::string> names = {"x", "y", "z"};
    std::vector<std::string> vars;
    for (size_t i = 0; i < invariant_factors.size(); ++i)
        vars.push_back(i < names.size() && invariant_factors.size() <= names.size()
                           ? names[i]
                           : "x" + std::to_string(i + 1));
    return build_from_core(vars, invariant_factors, core_var, e, k, m, "sigma",
                           subgroup_generator);
}

MilnorSquare build_square(const std::string& which, unsigned p, unsigned m,
                          const std::vector<unsigned>& invariant_factors,
                          const std::vector<long long>& subgroup_generator) {
    if (which == "A") return build_square_cp2(p, m);
    if (which == "B") return build_square_cp_cp(p, m);
    if (which == "sigma") return build_sigma_square(invariant_factors, subgroup_generator, m);
    throw std::invalid_argument("unknown square kind '" + which + "'");
}

GroupRing fp_cp_group_ring(unsigned p, unsigned m) {
    require_prime(p);
    return GroupRing{CoeffRing::make({"x"}, {IntPoly::cyclic(p)}, Int(p), /*local=*/true), m};
}

// ---------------------------------------------------------------------------
// the unit-commutator family

GrElem unit_commutator(const CommutatorSpec& spec) {
    return unit_commutator(spec, fp_cp_group_ring(spec.p, spec.m));
}

GrElem unit_commutator(const CommutatorSpec& spec, const GroupRing& corner) {
    if (spec.m < 2) throw std::invalid_argument("need at least two word generators");
    if (spec.n < 1) throw std::invalid_argument("index n must be >= 1");
    if (corner.ngens != spec.m) throw std::invalid_argument("corner rank mismatch");

    CoeffElem y = radical_generator(corner.coeff);
    GrElem alpha = GrElem::one(corner) + GrElem::term(corner, Word::generator(1), y);
    auto alpha_inv = inverse_unipotent(alpha);
    if (!alpha_inv) throw std::logic_error("1 + y t failed to invert");
    GrElem sigma = GrElem::from_word(corner, Word::generator(0).pow(spec.n));
    GrElem sigma_inv = GrElem::from_word(corner, Word::generator(0).pow(-(long long)spec.n));
    GrElem delta = alpha * sigma * *alpha_inv * sigma_inv;
    // delta (s^n alpha s^{-n}) == alpha, exactly
    if (delta * (sigma * alpha * sigma_inv) != alpha)
        throw std::logic_error("commutator identity failed");
    return delta;
}

CosetClass commutator_class(const MilnorSquare& sq, unsigned n) {
    if (sq.base.ngens < 2) throw std::invalid_argument("need at least two word generators");
    const Int& p = sq.base.coeff->characteristic();
    if (p <= 0 || !p.fits_ulong_p() || !is_prime(p.get_ui()))
        throw std::invalid_argument("base corner must have prime characteristic");
    GrElem delta =
        unit_commutator({static_cast<unsigned>(p.get_ui()), sq.base.ngens, n}, sq.base);
    auto inv = inverse_unipotent(delta);
    if (!inv) throw std::logic_error("commutator failed to invert");
    return CosetClass{sq, delta, *inv};
}

// ---------------------------------------------------------------------------
// distinctness decision

namespace {

std::vector<std::pair<Word, Int>> layer_terms(const GrElem& layer) {
    std::vector<std::pair<Word, Int>> out;
    for (const auto& [w, c] : layer.terms()) out.emplace_back(w, c.eval_all_ones());
    return out;
}

std::string wtext(const Word& w, unsigned m) { return to_string(w, m); }

}  // namespace

DistinctnessVerdict certify_distinct(unsigned p, unsigned m, unsigned n, unsigned n2) {
    if (n < 1 || n2 < 1) throw std::invalid_argument("indices must be >= 1");
    GroupRing corner = fp_cp_group_ring(p, m);
    GrElem dn = unit_commutator({p, m, n}, corner);
    GrElem dn2 = unit_commutator({p, m, n2}, corner);
    YAdicExpansion xn = y_adic_expand(dn);
    YAdicExpansion xn2 = y_adic_expand(dn2);

    DistinctnessVerdict verdict;
    GrElem one = GrElem::one(xn.scalar_ring);
    if (xn.layers[0] != one || xn2.layers[0] != one)
        throw std::logic_error("commutator y^0 layer is not 1");
    verdict.trace.push_back(
        {0, "1 == c * w * v with c scalar and w, v words", "c = 1 and v = w^-1"});

    auto lhs = layer_terms(xn.layers[1]);
    auto rhs = layer_terms(xn2.layers[1]);
    for (const auto& [w, c] : lhs)
        if (w.is_identity()) throw std::logic_error("identity word in a commutator y^1 layer");
    for (const auto& [w, c] : rhs)
        if (w.is_identity()) throw std::logic_error("identity word in a commutator y^1 layer");
    verdict.trace.push_back({1, "coefficient of the identity word", "d_1 = 0"});

    if (lhs.size() != rhs.size()) {
        verdict.trace.push_back({1, "support sizes differ", "no matching exists"});
        verdict.distinct = true;
        return verdict;
    }

    // try every coefficient-compatible bijection between the two supports
    std::vector<size_t> perm(rhs.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<Word> solution;
    do {
        bool coeffs_ok = true;
        for (size_t i = 0; i < lhs.size() && coeffs_ok; ++i)
            coeffs_ok = lhs[i].second == rhs[perm[i]].second;
        std::ostringstream label;
        label << "matching {";
        for (size_t i = 0; i < lhs.size(); ++i) {
            if (i) label << ", ";
            label << wtext(rhs[perm[i]].first, m) << " -> " << wtext(lhs[i].first, m);
        }
        label << "}";
        if (!coeffs_ok) {
            verdict.trace.push_back({1, label.str(), "eliminated: coefficients differ"});
            continue;
        }

        // w rhs_i w^-1 == lhs_i simultaneously
        std::optional<Conjugators> coset;
        bool dead = false;
        for (size_t i = 0; i < lhs.size() && !dead; ++i) {
            auto sol = solve_conjugation(rhs[perm[i]].first, lhs[i].first);
            if (!sol) {
                verdict.trace.push_back(
                    {1, label.str(), "eliminated: words are not conjugate (equation " +
                                         std::to_string(i + 1) + ")"});
                dead = true;
                break;
            }
            if (!coset) {
                coset = sol;
                continue;
            }
            auto point = coset_intersect(coset->base, coset->root, sol->base, sol->root);
            if (!point) {
                verdict.trace.push_back(
                    {1, label.str(), "eliminated: conjugator cosets are disjoint"});
                dead = true;
                break;
            }
            // verify the point against all equations seen so far
            for (size_t j = 0; j <= i; ++j)
                if (*point * rhs[perm[j]].first * point->inverse() != lhs[j].first)
                    throw std::logic_error("coset intersection returned a non-solution");
            coset = Conjugators{*point, Word()};  // pinned to a single point
        }
        if (dead) continue;
        if (coset) {
            Word w = coset->base;
            verdict.trace.push_back({1, label.str(), "solved by w = " + wtext(w, m)});
            solution = w;
        }
    } while (!solution && std::next_permutation(perm.begin(), perm.end()));

    if (!solution) {
        verdict.distinct = true;
        return verdict;
    }

    // full verification of the witness: delta_n == w delta_n2 w^-1
    GrElem w = GrElem::from_word(corner, *solution);
    GrElem winv = GrElem::from_word(corner, solution->inverse());
    if (dn != w * dn2 * winv)
        throw std::logic_error("layer witness failed full multiplication check");
    verdict.distinct = false;
    verdict.witness = EquivalenceWitness{CoeffElem::from_int(corner.coeff, 1), *solution,
                                         solution->inverse()};
    return verdict;
}

// ---------------------------------------------------------------------------
// brute force oracle

std::vector<Word> words_up_to_length(unsigned ngens, unsigned len_bound) {
    std::vector<Word> out{Word()};
    size_t begin = 0, end = out.size();
    for (unsigned l = 1; l <= len_bound; ++l) {
        for (size_t i = begin; i < end; ++i) {
            Word w = out[i];
            for (unsigned g = 0; g < ngens; ++g)
                for (long long e : {1LL, -1LL}) {
                    Word x = w * Word::generator(g, e);
                    if (x.length() == l) out.push_back(x);
                }
        }
        begin = end;
        end = out.size();
    }
    return out;
}

BruteForceReport brute_force_check(unsigned p, unsigned m, unsigned n, unsigned n2,
                                   unsigned len_bound) {
    GroupRing corner = fp_cp_group_ring(p, m);
    GrElem dn = unit_commutator({p, m, n}, corner);
    GrElem dn2 = unit_commutator({p, m, n2}, corner);
    auto units = enumerate_ring_units(corner.coeff);
    auto words = words_up_to_length(m, len_bound);

    BruteForceReport rep;
    for (const auto& w : words) {
        GrElem conj = GrElem::from_word(corner, w) * dn2 * GrElem::from_word(corner, w.inverse());
        for (const auto& [gamma, gamma_inv] : units) {
            ++rep.candidates;
            if (GrElem::from_coeff(corner, gamma) * conj == dn)
                rep.hits.push_back({gamma, w});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// stably-free certificates

TrivializationCert trivialize(unsigned p, unsigned m, unsigned n) {
    if (n < 1) throw std::invalid_argument("index n must be >= 1");
    MilnorSquare sq = build_square_cp2(p, m);
    const GroupRing& corner = sq.base;

    CoeffElem y = radical_generator(corner.coeff);
    GrElem alpha = GrElem::one(corner) + GrElem::term(corner, Word::generator(1), y);
    auto alpha_inv = inverse_unipotent(alpha);
    if (!alpha_inv) throw std::logic_error("1 + y t failed to invert");
    GrElem beta = GrElem::from_word(corner, Word::generator(0).pow(n));
    GrElem beta_inv = GrElem::from_word(corner, Word::generator(0).pow(-(long long)n));

    FactorList diag = commutator_diag(alpha, *alpha_inv, beta, beta_inv);
    GrElem delta = unit_commutator({p, m, n}, corner);
    if (diag.claimed != RMatrix::diagonal(corner, {delta, GrElem::one(corner)}))
        throw std::logic_error("commutator factorization misses diag(delta, 1)");

    TrivializationCert cert{sq, p, m, n, lift_factors(diag, sq)};
    verify_trivialization(cert);
    return cert;
}

void verify_trivialization(const TrivializationCert& cert) {
    if (cert.lifted.factors.size() > 18)
        throw VerificationError("certificate has more than 18 factors");
    if (!cert.lifted.all_elementary())
        throw VerificationError("certificate contains non-elementary factors");
    if (!cert.lifted.verify())
        throw VerificationError("certificate product differs from the claimed matrix");

    const MilnorSquare& sq = cert.square;
    RMatrix image(sq.base, cert.lifted.claimed.size());
    for (unsigned i = 0; i < image.size(); ++i)
        for (unsigned j = 0; j < image.size(); ++j)
            image.set(i, j, apply_hom(sq.psi_plus, cert.lifted.claimed.at(i, j)));
    GrElem delta = unit_commutator({cert.p, cert.m, cert.n}, sq.base);
    if (image != RMatrix::diagonal(sq.base, {delta, GrElem::one(sq.base)}))
        throw VerificationError("psi_plus image of the certificate is not diag(delta, 1)");
}

// ---------------------------------------------------------------------------
// bounded unit search

namespace {

// every nonzero coefficient with the given height, full exponent grid
std::vector<CoeffElem> coefficient_box(const CoeffRingPtr& ring, unsigned height) {
    auto basis = monomial_basis(ring, 4096);
    std::vector<Int> values;
    if (ring->characteristic() > 0) {
        for (Int v = 0; v < ring->characteristic(); ++v) values.push_back(v);
    } else {
        for (long long v = -static_cast<long long>(height); v <= static_cast<long long>(height);
             ++v)
            values.push_back(Int(static_cast<long>(v)));
    }
    double total = 1;
    for (size_t i = 0; i < basis.size(); ++i) total *= static_cast<double>(values.size());
    if (total > 2e6) throw std::invalid_argument("coefficient box too large");

    std::vector<CoeffElem> out;
    std::vector<size_t> digit(basis.size(), 0);
    while (true) {
        std::vector<std::pair<CoeffElem::Exps, Int>> terms;
        for (size_t i = 0; i < basis.size(); ++i)
            if (values[digit[i]] != 0) terms.emplace_back(basis[i], values[digit[i]]);
        if (!terms.empty()) out.push_back(CoeffElem::from_terms(ring, terms));
        size_t i = 0;
        for (; i < digit.size(); ++i) {
            if (++digit[i] < values.size()) break;
            digit[i] = 0;
        }
        if (i == digit.size()) break;
    }
    return out;
}

// The unique abelianized class with a nonzero coefficient sum; callers only
// apply this to elements that passed the pruning filter.
std::vector<long long> ab_key(const GrElem& u, unsigned m) {
    std::map<std::vector<long long>, CoeffElem> classes;
    for (const auto& [w, c] : u.terms()) {
        auto key = abelianization(w, m);
        auto it = classes.find(key);
        if (it == classes.end())
            classes.emplace(key, c);
        else
            it->second = it->second + c;
    }
    for (const auto& [k, s] : classes)
        if (!s.is_zero()) return k;
    return {};
}

// at most one abelianized class with a nonzero coefficient sum; necessary for
// a unit when the coefficients form an integral domain
bool laurent_unit_possible(const GrElem& u, unsigned m) {
    std::map<std::vector<long long>, CoeffElem> classes;
    for (const auto& [w, c] : u.terms()) {
        auto key = abelianization(w, m);
        auto it = classes.find(key);
        if (it == classes.end())
            classes.emplace(key, c);
        else
            it->second = it->second + c;
    }
    unsigned nonzero = 0;
    for (const auto& [k, s] : classes)
        if (!s.is_zero()) ++nonzero;
    return nonzero == 1;
}

}  // namespace

UnitSearchResult unit_search(const GroupRing& ring, unsigned support_bound, unsigned height_bound,
                             unsigned len_bound) {
    if (support_bound < 1) throw std::invalid_argument("support bound must be >= 1");
    auto coeffs = coefficient_box(ring.coeff, height_bound);
    auto words = words_up_to_length(ring.ngens, len_bound);
    const bool prune = ring.coeff->is_integral_domain() && ring.ngens >= 1;

    UnitSearchResult res;
    std::vector<GrElem> box;

    // supports of size 1..support_bound over the word box, every coefficient
    // assignment from the box
    std::vector<size_t> idx;
    auto emit = [&](const GrElem& u) {
        ++res.candidates;
        if (!prune || laurent_unit_possible(u, ring.ngens)) box.push_back(u);
    };
    std::function<void(size_t, GrElem)> assign = [&](size_t d, GrElem acc) {
        if (d == idx.size()) {
            emit(acc);
            return;
        }
        for (const auto& c : coeffs) assign(d + 1, acc + GrElem::term(ring, words[idx[d]], c));
    };
    std::function<void(size_t, size_t)> subsets = [&](size_t start, size_t left) {
        if (left == 0) return;
        for (size_t i = start; i < words.size(); ++i) {
            idx.push_back(i);
            assign(0, GrElem::zero(ring));
            subsets(i + 1, left - 1);
            idx.pop_back();
        }
    };
    subsets(0, support_bound);

    if (!prune && box.size() > 20000)
        throw std::invalid_argument("search box too large without abelianization pruning");

    // bucket by abelianized class so only plausible inverse pairs are tried
    std::map<std::vector<long long>, std::vector<size_t>> buckets;
    for (size_t i = 0; i < box.size(); ++i)
        buckets[prune ? ab_key(box[i], ring.ngens) : std::vector<long long>{}].push_back(i);

    GrElem one = GrElem::one(ring);
    for (size_t i = 0; i < box.size(); ++i) {
        std::vector<long long> key = prune ? ab_key(box[i], ring.ngens) : std::vector<long long>{};
        if (prune) {
            // a two-sided inverse must live in the negated class
            std::vector<long long> negkey = key;
            for (auto& v : negkey) v = -v;
            key = negkey;
        }
        auto it = buckets.find(key);
        if (it == buckets.end()) continue;
        for (size_t j : it->second) {
            if (box[i] * box[j] != one) continue;
            if (box[j] * box[i] != one) continue;
            res.unit_pairs.emplace_back(box[i], box[j]);
            if (box[i].support_size() >= 2) res.nontrivial_units.push_back(box[i]);
            break;
        }
    }
    return res;
}

}  // namespace stabfree
