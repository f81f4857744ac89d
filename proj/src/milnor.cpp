#include "stabfree/milnor.hpp"

#include <sstream>

#include "stabfree/parse.hpp"
#include "stabfree/random.hpp"

namespace stabfree {

namespace {

// Transport an element into a ring that contains all its variables by name,
// keeping exponents and integer coefficients. Used for coefficient sections
// and for embedding corner elements into the fibre ring.
CoeffElem transport(const CoeffElem& a, const CoeffRingPtr& target) {
    std::vector<size_t> vmap(a.ring()->nvars());
    for (size_t i = 0; i < a.ring()->nvars(); ++i) {
        auto idx = target->var_index(a.ring()->variables()[i]);
        if (!idx) throw std::invalid_argument("transport: missing variable in target ring");
        vmap[i] = *idx;
    }
    std::vector<std::pair<CoeffElem::Exps, Int>> terms;
    for (const auto& [e, c] : a.terms()) {
        CoeffElem::Exps te(target->nvars(), 0);
        for (size_t i = 0; i < e.size(); ++i) te[vmap[i]] = e[i];
        terms.emplace_back(std::move(te), c);
    }
    return CoeffElem::from_terms(target, terms);
}

GrElem transport(const GrElem& a, const GroupRing& target) {
    GrElem out = GrElem::zero(target);
    for (const auto& [w, c] : a.terms()) out = out + GrElem::term(target, w, transport(c, target.coeff));
    return out;
}

uint32_t var_exp(const CoeffElem::Exps& e, size_t v) { return v < e.size() ? e[v] : 0; }

// Remainder and quotient of division by tau = v^e - 1: exponent folding.
void fold_by_tau(const CoeffElem& a, size_t v, unsigned e, CoeffElem& quot, CoeffElem& rem) {
    const CoeffRingPtr& ring = a.ring();
    std::vector<std::pair<CoeffElem::Exps, Int>> q, r;
    for (const auto& [E, c] : a.terms()) {
        uint32_t ve = var_exp(E, v);
        CoeffElem::Exps base = E;
        base[v] = ve % e;
        r.emplace_back(base, c);
        for (uint32_t i = 1; i <= ve / e; ++i) {
            CoeffElem::Exps qe = E;
            qe[v] = ve - i * e;
            q.emplace_back(std::move(qe), c);
        }
    }
    quot = CoeffElem::from_terms(ring, q);
    rem = CoeffElem::from_terms(ring, r);
}

// Remainder of division by the monic only-v polynomial sigma (degree d in v).
CoeffElem rem_by_sigma(const CoeffElem& a, size_t v, const CoeffElem& sigma, unsigned d) {
    CoeffElem rem = a;
    while (true) {
        uint32_t top = 0;
        for (const auto& [E, c] : rem.terms()) top = std::max(top, var_exp(E, v));
        if (top < d) break;
        std::vector<std::pair<CoeffElem::Exps, Int>> shift;
        for (const auto& [E, c] : rem.terms()) {
            if (var_exp(E, v) != top) continue;
            CoeffElem::Exps se = E;
            se[v] = top - d;
            shift.emplace_back(std::move(se), c);
        }
        rem = rem - CoeffElem::from_terms(rem.ring(), shift) * sigma;
    }
    return rem;
}

CoeffElem divide_ints(const CoeffElem& a, unsigned k) {
    std::vector<std::pair<CoeffElem::Exps, Int>> terms;
    for (const auto& [E, c] : a.terms()) {
        if (!divides(Int(k), c)) throw std::logic_error("pullback: inexact integer division");
        terms.emplace_back(E, div_exact(c, Int(k)));
    }
    return CoeffElem::from_terms(a.ring(), terms);
}

}  // namespace

PullbackCore build_pullback_core(const CoeffRingPtr& fibre_ring, size_t var_index, unsigned e,
                                 unsigned k) {
    if (k < 2 || e < 1) throw std::invalid_argument("pullback core needs e >= 1, k >= 2");
    if (fibre_ring->relation(var_index) != IntPoly::cyclic(e * k))
        throw std::invalid_argument("fibre relation at the core variable must be v^{ek} - 1");
    PullbackCore core;
    core.var_index = var_index;
    core.e = e;
    core.k = k;
    std::vector<std::pair<CoeffElem::Exps, Int>> s, t, q;
    CoeffElem::Exps zero(fibre_ring->nvars(), 0);
    for (unsigned j = 0; j < k; ++j) {
        CoeffElem::Exps E = zero;
        E[var_index] = j * e;
        s.emplace_back(std::move(E), Int(1));
    }
    {
        CoeffElem::Exps E = zero;
        E[var_index] = e;
        t.emplace_back(std::move(E), Int(1));
        t.emplace_back(zero, Int(-1));
    }
    for (unsigned i = 0; i + 1 < k; ++i) {
        CoeffElem::Exps E = zero;
        E[var_index] = i * e;
        q.emplace_back(std::move(E), Int(k - 1 - i));
    }
    core.sigma = CoeffElem::from_terms(fibre_ring, s);
    core.tau = CoeffElem::from_terms(fibre_ring, t);
    core.tau_quot = CoeffElem::from_terms(fibre_ring, q);
    CoeffElem lhs = core.sigma - CoeffElem::from_int(fibre_ring, Int(k));
    if (lhs != core.tau_quot * core.tau)
        throw std::logic_error("pullback core identity failed to verify");
    return core;
}

MilnorSquare::MilnorSquare(GroupRing f, GroupRing p, GroupRing mi, GroupRing b, CoeffHom pp,
                           CoeffHom pm, CoeffHom sp, CoeffHom sm, PullbackCore c)
    : fibre(std::move(f)),
      plus(std::move(p)),
      minus(std::move(mi)),
      base(std::move(b)),
      pi_plus(std::move(pp)),
      pi_minus(std::move(pm)),
      psi_plus(std::move(sp)),
      psi_minus(std::move(sm)),
      core(std::move(c)) {}

MilnorSquare MilnorSquare::make(GroupRing fibre, GroupRing plus, GroupRing minus, GroupRing base,
                                CoeffHom pi_plus, CoeffHom pi_minus, CoeffHom psi_plus,
                                CoeffHom psi_minus, PullbackCore core, std::string kind,
                                std::vector<unsigned> group_orders,
                                std::vector<long long> subgroup_generator, bool validated) {
    MilnorSquare sq(std::move(fibre), std::move(plus), std::move(minus), std::move(base),
                    std::move(pi_plus), std::move(pi_minus), std::move(psi_plus),
                    std::move(psi_minus), std::move(core));
    sq.kind = std::move(kind);
    sq.group_orders = std::move(group_orders);
    sq.subgroup_generator = std::move(subgroup_generator);
    if (validated) sq.validate();
    return sq;
}

void MilnorSquare::validate() const {
    auto fail = [](const std::string& msg) { throw SquareError("square invalid: " + msg); };

    if (!(fibre.ngens == plus.ngens && plus.ngens == minus.ngens && minus.ngens == base.ngens))
        fail("corner word ranks differ");
    if (!pi_plus.source()->same_presentation(*fibre.coeff) ||
        !pi_plus.target()->same_presentation(*plus.coeff) ||
        !pi_minus.source()->same_presentation(*fibre.coeff) ||
        !pi_minus.target()->same_presentation(*minus.coeff) ||
        !psi_plus.source()->same_presentation(*plus.coeff) ||
        !psi_plus.target()->same_presentation(*base.coeff) ||
        !psi_minus.source()->same_presentation(*minus.coeff) ||
        !psi_minus.target()->same_presentation(*base.coeff))
        fail("hom endpoints do not match the corner rings");

    // commuting square
    CoeffHom down = CoeffHom::compose(psi_plus, pi_plus);
    CoeffHom right = CoeffHom::compose(psi_minus, pi_minus);
    for (size_t i = 0; i < fibre.coeff->nvars(); ++i)
        if (down.images()[i] != right.images()[i]) fail("square does not commute");

    // psi_plus section: identity on generators and on sample elements
    for (size_t i = 0; i < base.coeff->nvars(); ++i) {
        CoeffElem v = CoeffElem::variable(base.coeff, i);
        if (psi_plus.apply(section_plus(v)) != v) fail("psi_plus section misses a generator");
    }
    Rng rng(42);
    for (int s = 0; s < 8; ++s) {
        CoeffElem a = random_coeff(base.coeff, rng, 3, 7);
        if (psi_plus.apply(section_plus(a)) != a) fail("psi_plus section is not a section");
        CoeffElem b = random_coeff(base.coeff, rng, 3, 7);
        if (psi_minus.apply(section_minus(b)) != b) fail("psi_minus lift is not a section");
    }

    // core data
    if (core.var_index >= fibre.coeff->nvars()) fail("core variable out of range");
    if (fibre.coeff->relation(core.var_index) != IntPoly::cyclic(core.e * core.k))
        fail("fibre relation at the core variable is not v^{ek} - 1");
    if (core.sigma - CoeffElem::from_int(fibre.coeff, Int(core.k)) != core.tau_quot * core.tau)
        fail("core identity sigma - k == q * tau is violated");
    if (base.coeff->characteristic() != Int(core.k)) fail("base characteristic differs from k");
    const std::string& vname = fibre.coeff->variables()[core.var_index];
    if (auto mi = minus.coeff->var_index(vname)) {
        IntPoly expect_sigma = [&] {
            std::vector<Int> cs(core.e * (core.k - 1) + 1, Int(0));
            for (unsigned j = 0; j < core.k; ++j) cs[j * core.e] = 1;
            return IntPoly(std::move(cs));
        }();
        if (minus.coeff->relation(*mi) != expect_sigma) fail("minus relation is not sigma");
    } else {
        fail("core variable missing from the minus ring");
    }
    if (core.e == 1) {
        if (plus.coeff->var_index(vname)) fail("core variable should be dropped when e == 1");
    } else if (auto pi = plus.coeff->var_index(vname)) {
        if (plus.coeff->relation(*pi) != IntPoly::cyclic(core.e)) fail("plus relation is not v^e - 1");
    } else {
        fail("core variable missing from the plus ring");
    }
}

CoeffElem MilnorSquare::section_plus(const CoeffElem& a) const {
    if (!a.ring()->same_presentation(*base.coeff))
        throw std::invalid_argument("section_plus expects a base-ring element");
    return transport(a, plus.coeff);
}

GrElem MilnorSquare::section_plus(const GrElem& a) const {
    if (!a.ring().compatible(base)) throw std::invalid_argument("section_plus ring mismatch");
    return transport(a, plus);
}

CoeffElem MilnorSquare::section_minus(const CoeffElem& a) const {
    if (!a.ring()->same_presentation(*base.coeff))
        throw std::invalid_argument("section_minus expects a base-ring element");
    return transport(a, minus.coeff);
}

GrElem MilnorSquare::section_minus(const GrElem& a) const {
    if (!a.ring().compatible(base)) throw std::invalid_argument("section_minus ring mismatch");
    return transport(a, minus);
}

std::optional<CoeffElem> pullback_coeff(const MilnorSquare& sq, const CoeffElem& a_plus,
                                        const CoeffElem& a_minus) {
    const CoeffRingPtr& fr = sq.fibre.coeff;
    const size_t v = sq.core.var_index;
    CoeffElem ep = transport(a_plus, fr);
    CoeffElem em = transport(a_minus, fr);
    CoeffElem d = ep - em;

    CoeffElem quot(fr), rem(fr);
    fold_by_tau(d, v, sq.core.e, quot, rem);
    for (const auto& [E, c] : rem.terms())
        if (!divides(Int(sq.core.k), c)) return std::nullopt;  // base images differ
    CoeffElem u = divide_ints(rem, sq.core.k);
    CoeffElem f = em + sq.core.sigma * u;

    // independent route: f' = a_plus + tau * ((q d mod sigma) / k)
    CoeffElem rem2 = rem_by_sigma(sq.core.tau_quot * d, v, sq.core.sigma,
                                  sq.core.e * (sq.core.k - 1));
    CoeffElem f2 = ep + sq.core.tau * divide_ints(rem2, sq.core.k);
    if (f != f2) throw std::logic_error("pullback reconstruction routes disagree");
    return f;
}

std::optional<GrElem> pullback(const MilnorSquare& sq, const GrElem& a_plus,
                               const GrElem& a_minus) {
    if (!a_plus.ring().compatible(sq.plus) || !a_minus.ring().compatible(sq.minus))
        throw std::invalid_argument("pullback corner ring mismatch");
    if (apply_hom(sq.psi_plus, a_plus) != apply_hom(sq.psi_minus, a_minus)) return std::nullopt;

    GrElem out = GrElem::zero(sq.fibre);
    std::map<Word, bool> support;
    for (const auto& [w, c] : a_plus.terms()) support[w] = true;
    for (const auto& [w, c] : a_minus.terms()) support[w] = true;
    for (const auto& [w, unused] : support) {
        auto f = pullback_coeff(sq, a_plus.coeff_at(w), a_minus.coeff_at(w));
        if (!f) throw std::logic_error("pullback: compatible pair failed coefficientwise");
        out = out + GrElem::term(sq.fibre, w, *f);
    }
    return out;
}

ExactnessReport check_exactness(const MilnorSquare& sq, unsigned samples, unsigned long seed) {
    ExactnessReport rep;
    Rng rng(seed);
    auto note = [&](const std::string& what, const GrElem& a, const GrElem& b) {
        ++rep.failures;
        if (rep.counterexamples.size() < 8) {
            std::ostringstream os;
            os << what << ": plus=" << to_string(a) << " minus=" << to_string(b);
            rep.counterexamples.push_back(os.str());
        }
    };

    for (unsigned s = 0; s < samples; ++s) {
        ++rep.samples;
        try {
            // round trip through the corners
            GrElem f = random_element(sq.fibre, rng, 3, 2, 4);
            GrElem ap = apply_hom(sq.pi_plus, f);
            GrElem am = apply_hom(sq.pi_minus, f);
            auto g = pullback(sq, ap, am);
            if (!g || *g != f) {
                note("round trip failed", ap, am);
                continue;
            }

            // independently constructed compatible pair
            GrElem vm = random_element(sq.minus, rng, 3, 2, 4);
            GrElem vb = apply_hom(sq.psi_minus, vm);
            GrElem up = sq.section_plus(vb) + GrElem::from_int(sq.plus, Int(sq.core.k)) *
                                                  random_element(sq.plus, rng, 2, 2, 3);
            auto h = pullback(sq, up, vm);
            if (!h) {
                note("compatible pair rejected", up, vm);
                continue;
            }
            if (apply_hom(sq.pi_plus, *h) != up || apply_hom(sq.pi_minus, *h) != vm) {
                note("pullback projections differ", up, vm);
                continue;
            }

            // incompatible pair must be rejected
            GrElem bad = up + GrElem::one(sq.plus);
            if (pullback(sq, bad, vm)) {
                note("incompatible pair accepted", bad, vm);
                continue;
            }
        } catch (const std::logic_error& e) {
            // a reconstruction inconsistency is itself a counterexample
            note(std::string("inconsistency: ") + e.what(), GrElem::zero(sq.plus),
                 GrElem::zero(sq.minus));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// rank-1 modules

Rank1Module::Rank1Module(MilnorSquare sq, GrElem alpha, GrElem alpha_inv)
    : sq_(std::move(sq)), alpha_(std::move(alpha)), alpha_inv_(std::move(alpha_inv)) {
    GrElem one = GrElem::one(sq_.base);
    if (!alpha_.ring().compatible(sq_.base))
        throw std::invalid_argument("gluing unit must lie in the base ring");
    if (alpha_ * alpha_inv_ != one || alpha_inv_ * alpha_ != one)
        throw std::invalid_argument("gluing element is not a verified unit");
}

Rank1Module glue_rank1(const MilnorSquare& sq, const GrElem& alpha, const GrElem& alpha_inv) {
    return Rank1Module(sq, alpha, alpha_inv);
}

bool Rank1Module::contains(const GrElem& u, const GrElem& v) const {
    if (!u.ring().compatible(sq_.plus) || !v.ring().compatible(sq_.minus))
        throw std::invalid_argument("member corner ring mismatch");
    return alpha_ * apply_hom(sq_.psi_plus, u) == apply_hom(sq_.psi_minus, v);
}

std::pair<GrElem, GrElem> Rank1Module::act(const std::pair<GrElem, GrElem>& member,
                                           const GrElem& f) const {
    if (!f.ring().compatible(sq_.fibre)) throw std::invalid_argument("action ring mismatch");
    return {member.first * apply_hom(sq_.pi_plus, f), member.second * apply_hom(sq_.pi_minus, f)};
}

std::pair<GrElem, GrElem> Rank1Module::member_from_plus(const GrElem& u) const {
    GrElem v = sq_.section_minus(alpha_ * apply_hom(sq_.psi_plus, u));
    if (!contains(u, v)) throw std::logic_error("constructed member failed the gluing condition");
    return {u, v};
}

// ---------------------------------------------------------------------------
// factor lifting

FactorList lift_factors(const FactorList& fl, const MilnorSquare& sq) {
    if (!fl.claimed.ring().compatible(sq.base))
        throw std::invalid_argument("lift_factors expects factors over the base ring");
    std::vector<ElemFactor> lifted;
    lifted.reserve(fl.factors.size());
    for (const auto& f : fl.factors) {
        if (f.kind() != ElemFactor::Kind::Elementary)
            throw std::invalid_argument("lift_factors expects elementary factors only");
        lifted.push_back(ElemFactor::elementary(f.i(), f.j(), sq.section_plus(f.coeff())));
    }
    RMatrix prod = RMatrix::identity(sq.plus, fl.claimed.size());
    for (const auto& f : lifted) prod = prod * f.to_matrix(sq.plus, fl.claimed.size());

    RMatrix image(sq.base, fl.claimed.size());
    for (unsigned i = 0; i < prod.size(); ++i)
        for (unsigned j = 0; j < prod.size(); ++j)
            image.set(i, j, apply_hom(sq.psi_plus, prod.at(i, j)));
    if (image != fl.claimed)
        throw std::logic_error("lifted factor product does not map onto the original");
    return FactorList{std::move(lifted), std::move(prod)};
}

}  // namespace stabfree
