#include "stabfree/grelem.hpp"

#include <stdexcept>

namespace stabfree {

void GrElem::check_same_ring(const GrElem& o) const {
    if (!r_.compatible(o.r_)) throw std::invalid_argument("group ring mismatch");
}

void GrElem::add_term(const Word& w, const CoeffElem& c) {
    if (c.is_zero()) return;
    if (w.max_gen() > r_.ngens) throw std::invalid_argument("word uses too many generators");
    auto it = t_.find(w);
    if (it == t_.end()) {
        t_.emplace(w, c);
        return;
    }
    CoeffElem s = it->second + c;
    if (s.is_zero())
        t_.erase(it);
    else
        it->second = std::move(s);
}

GrElem GrElem::one(GroupRing ring) { return from_int(std::move(ring), 1); }

GrElem GrElem::from_int(GroupRing ring, Int c) {
    CoeffElem ce = CoeffElem::from_int(ring.coeff, std::move(c));
    return term(std::move(ring), Word(), ce);
}

GrElem GrElem::from_coeff(GroupRing ring, const CoeffElem& c) {
    return term(std::move(ring), Word(), c);
}

GrElem GrElem::from_word(GroupRing ring, const Word& w) {
    CoeffElem one = CoeffElem::from_int(ring.coeff, 1);
    return term(std::move(ring), w, one);
}

GrElem GrElem::term(GroupRing ring, const Word& w, const CoeffElem& c) {
    if (!c.ring() || !c.ring()->same_presentation(*ring.coeff))
        throw std::invalid_argument("coefficient lies in the wrong ring");
    GrElem r(std::move(ring));
    r.add_term(w, c);
    return r;
}

bool GrElem::is_one() const {
    return t_.size() == 1 && t_.begin()->first.is_identity() && t_.begin()->second.is_one();
}

CoeffElem GrElem::coeff_at(const Word& w) const {
    auto it = t_.find(w);
    if (it != t_.end()) return it->second;
    return CoeffElem(r_.coeff);
}

GrElem GrElem::operator+(const GrElem& o) const {
    check_same_ring(o);
    GrElem r = *this;
    for (const auto& [w, c] : o.t_) r.add_term(w, c);
    return r;
}

GrElem GrElem::operator-(const GrElem& o) const {
    check_same_ring(o);
    GrElem r = *this;
    for (const auto& [w, c] : o.t_) r.add_term(w, -c);
    return r;
}

GrElem GrElem::operator-() const {
    GrElem r(r_);
    for (const auto& [w, c] : t_) r.add_term(w, -c);
    return r;
}

GrElem GrElem::operator*(const GrElem& o) const {
    check_same_ring(o);
    GrElem r(r_);
    for (const auto& [w1, c1] : t_)
        for (const auto& [w2, c2] : o.t_) r.add_term(w1 * w2, c1 * c2);
    return r;
}

GrElem GrElem::pow(unsigned e) const {
    GrElem acc = GrElem::one(r_);
    GrElem base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

bool GrElem::operator==(const GrElem& o) const {
    if (!r_.compatible(o.r_)) return false;
    return t_ == o.t_;
}

CoeffElem GrElem::augmentation() const {
    CoeffElem s(r_.coeff);
    for (const auto& [w, c] : t_) s = s + c;
    return s;
}

GrElem apply_hom(const CoeffHom& h, const GrElem& a) {
    if (!a.ring().coeff->same_presentation(*h.source()))
        throw std::invalid_argument("hom applied to element of the wrong ring");
    GrElem r(GroupRing{h.target(), a.ring().ngens});
    for (const auto& [w, c] : a.terms()) r = r + GrElem::term(r.ring(), w, h.apply(c));
    return r;
}

std::optional<GrElem> inverse_unipotent(const GrElem& a) {
    const GroupRing& ring = a.ring();
    GrElem one = GrElem::one(ring);
    GrElem n = a - one;
    if (n.is_zero()) return one;

    size_t bound = 1;
    const Int& N = ring.coeff->characteristic();
    if (ring.coeff->is_local() && N > 0 && N.fits_ulong_p()) {
        bound = (N.get_ui() - 1) * std::max<size_t>(1, n.support_size()) + 1;
    } else {
        size_t dim = 1;
        for (size_t i = 0; i < ring.coeff->nvars(); ++i) dim *= ring.coeff->relation(i).degree();
        bound = dim * std::max<size_t>(1, n.support_size()) + 1;
    }

    GrElem acc = one;
    GrElem pw = one;
    for (size_t k = 1; k <= bound; ++k) {
        pw = pw * (-n);
        if (pw.is_zero()) break;
        acc = acc + pw;
        if (k == bound) return std::nullopt;  // powers did not vanish in time
    }
    if (acc * a == one && a * acc == one) return acc;
    return std::nullopt;
}

CoeffElem radical_generator(const CoeffRingPtr& ring) {
    if (!ring->is_local() || ring->nvars() != 1)
        throw std::invalid_argument("radical generator needs a local cyclic ring");
    return CoeffElem::from_int(ring, 1) - CoeffElem::variable(ring, 0);
}

// ---------------------------------------------------------------------------
// y-adic expansion

namespace {

void require_fp_cp(const CoeffRingPtr& ring) {
    bool ok = ring->nvars() == 1 && ring->characteristic() > 0 &&
              ring->characteristic().fits_ulong_p() && is_prime(ring->characteristic().get_ui()) &&
              ring->relation(0) == IntPoly::cyclic(ring->characteristic().get_ui());
    if (!ok) throw std::invalid_argument("y-adic expansion needs F_p[v]/(v^p - 1)");
}

}  // namespace

YAdicExpansion y_adic_expand(const GrElem& a) {
    require_fp_cp(a.ring().coeff);
    const unsigned long p = a.ring().coeff->characteristic().get_ui();
    CoeffRingPtr fp = CoeffRing::make({}, {}, Int(p), /*local=*/true);
    YAdicExpansion out;
    out.source_ring = a.ring();
    out.scalar_ring = GroupRing{fp, a.ring().ngens};
    out.layers.assign(p, GrElem::zero(out.scalar_ring));

    // binomials mod p up to row p-1
    std::vector<std::vector<Int>> binom(p, std::vector<Int>(p, 0));
    for (unsigned long i = 0; i < p; ++i) {
        binom[i][0] = 1;
        for (unsigned long k = 1; k <= i; ++k)
            binom[i][k] = mod_floor(binom[i - 1][k - 1] + binom[i - 1][k], Int(p));
    }

    // v^i == (1 - y)^i: coefficient of y^k is (-1)^k C(i, k)
    for (const auto& [w, c] : a.terms()) {
        for (const auto& [e, ci] : c.terms()) {
            unsigned long i = e[0];
            for (unsigned long k = 0; k <= i; ++k) {
                Int v = binom[i][k] * ci;
                if (k % 2 == 1) v = -v;
                v = mod_floor(v, Int(p));
                if (v == 0) continue;
                out.layers[k] =
                    out.layers[k] + GrElem::term(out.scalar_ring, w, CoeffElem::from_int(fp, v));
            }
        }
    }
    return out;
}

GrElem y_adic_reconstruct(const YAdicExpansion& x) {
    const GroupRing& ring = x.source_ring;
    CoeffElem y = radical_generator(ring.coeff);
    CoeffElem ypow = CoeffElem::from_int(ring.coeff, 1);
    GrElem out = GrElem::zero(ring);
    for (size_t k = 0; k < x.layers.size(); ++k) {
        for (const auto& [w, c] : x.layers[k].terms()) {
            Int scalar = c.eval_all_ones();  // scalar ring has no variables
            out = out + GrElem::term(ring, w, ypow * CoeffElem::from_int(ring.coeff, scalar));
        }
        ypow = ypow * y;
    }
    return out;
}

}  // namespace stabfree
