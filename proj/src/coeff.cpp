#include "stabfree/coeff.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabfree {

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(Int c) { return IntPoly(std::vector<Int>{std::move(c)}); }

IntPoly IntPoly::monomial(unsigned deg, Int c) {
    std::vector<Int> v(deg + 1, Int(0));
    v[deg] = std::move(c);
    return IntPoly(std::move(v));
}

IntPoly IntPoly::cyclic(unsigned n) {
    if (n == 0) throw std::invalid_argument("cyclic relation needs n >= 1");
    std::vector<Int> v(n + 1, Int(0));
    v[0] = -1;
    v[n] = 1;
    return IntPoly(std::move(v));
}

Int IntPoly::eval_one() const {
    Int s = 0;
    for (const auto& c : c_) s += c;
    return s;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Int> v(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<Int> v(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Int> v(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(v));
}

void IntPoly::divmod(const IntPoly& a, const IntPoly& monic, IntPoly& q, IntPoly& r) {
    if (!monic.is_monic()) throw std::invalid_argument("divmod requires a monic divisor");
    std::vector<Int> rem = a.c_;
    const int d = monic.degree();
    std::vector<Int> quot;
    if (static_cast<int>(rem.size()) - 1 >= d) quot.assign(rem.size() - d, Int(0));
    for (int i = static_cast<int>(rem.size()) - 1; i >= d; --i) {
        Int lead = rem[i];
        if (lead == 0) continue;
        quot[i - d] = lead;
        for (int j = 0; j <= d; ++j) rem[i - d + j] -= lead * monic.c_[j];
    }
    q = IntPoly(std::move(quot));
    r = IntPoly(std::move(rem));
}

IntPoly cyclotomic_poly(unsigned d) {
    if (d == 0) throw std::invalid_argument("cyclotomic index must be positive");
    IntPoly num = IntPoly::cyclic(d);
    for (unsigned e = 1; e < d; ++e) {
        if (d % e != 0) continue;
        IntPoly q, r;
        IntPoly::divmod(num, cyclotomic_poly(e), q, r);
        if (!r.is_zero()) throw std::logic_error("cyclotomic division left a remainder");
        num = q;
    }
    return num;
}

IntPoly cyclotomic_identity_quotient(unsigned p) {
    if (!is_prime(p)) throw std::invalid_argument("cyclotomic identity needs a prime");
    // q = (p-1) + (p-2) x^p + ... + 1 * x^{p(p-2)}
    std::vector<Int> v(p >= 2 ? p * (p - 2) + 1 : 1, Int(0));
    for (unsigned i = 0; i + 1 < p; ++i) v[p * i] = Int(p - 1 - i);
    IntPoly q{std::move(v)};
    IntPoly lhs = cyclotomic_poly(p * p) - q * IntPoly::cyclic(p);
    if (!(lhs == IntPoly::constant(Int(p))))
        throw std::logic_error("cyclotomic identity verification failed");
    return q;
}

// ---------------------------------------------------------------------------
// CoeffRing

namespace {

// Order of x in Z[x]/(rel, N): smallest M with x^M == 1, if any below the cap.
std::optional<unsigned> compute_var_order(const IntPoly& rel, const Int& N) {
    const int d = rel.degree();
    if (d <= 0) return std::nullopt;
    if (rel == IntPoly::cyclic(static_cast<unsigned>(d))) return static_cast<unsigned>(d);
    if (d > 64) return std::nullopt;
    auto reduce = [&](std::vector<Int>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i >= d; --i) {
            Int lead = v[i];
            if (lead == 0) continue;
            v[i] = 0;
            for (int j = 0; j < d; ++j) v[i - d + j] -= lead * rel.coeff(j);
        }
        v.resize(d);
        if (N > 0)
            for (auto& c : v) c = mod_floor(c, N);
    };
    std::vector<Int> pw(d, Int(0));
    pw[0] = 1;
    const unsigned cap = 8 * static_cast<unsigned>(d) * static_cast<unsigned>(d) + 64;
    for (unsigned m = 1; m <= cap; ++m) {
        // multiply by x
        pw.insert(pw.begin(), Int(0));
        reduce(pw);
        bool one = pw[0] == 1;
        for (int j = 1; one && j < d; ++j) one = pw[j] == 0;
        if (one) return m;
    }
    return std::nullopt;
}

}  // namespace

CoeffRingPtr CoeffRing::make(std::vector<std::string> variables, std::vector<IntPoly> relations,
                             Int characteristic, bool local, bool integral_domain) {
    if (variables.size() != relations.size())
        throw std::invalid_argument("one relation per variable required");
    if (characteristic < 0) throw std::invalid_argument("characteristic must be >= 0");
    if (local && (characteristic <= 0 || !characteristic.fits_ulong_p() ||
                  !is_prime(characteristic.get_ui())))
        throw std::invalid_argument("local rings require prime characteristic");
    for (size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].empty()) throw std::invalid_argument("empty variable name");
        for (size_t j = 0; j < i; ++j)
            if (variables[j] == variables[i]) throw std::invalid_argument("duplicate variable name");
        if (!relations[i].is_monic() || relations[i].degree() < 1)
            throw std::invalid_argument("relations must be monic of degree >= 1");
    }
    auto r = std::shared_ptr<CoeffRing>(new CoeffRing());
    r->vars_ = std::move(variables);
    r->rels_ = std::move(relations);
    r->char_ = std::move(characteristic);
    r->local_ = local;
    r->domain_ = integral_domain;
    r->order_.resize(r->vars_.size());
    for (size_t i = 0; i < r->vars_.size(); ++i)
        r->order_[i] = compute_var_order(r->rels_[i], r->char_);
    return r;
}

std::optional<size_t> CoeffRing::var_index(std::string_view name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

bool CoeffRing::same_presentation(const CoeffRing& o) const {
    return vars_ == o.vars_ && rels_ == o.rels_ && char_ == o.char_;
}

// ---------------------------------------------------------------------------
// CoeffElem

void CoeffElem::check_same_ring(const CoeffElem& o) const {
    if (!ring_ || !o.ring_) throw std::invalid_argument("operation on detached element");
    if (ring_ != o.ring_ && !ring_->same_presentation(*o.ring_))
        throw std::invalid_argument("coefficient ring mismatch");
}

void CoeffElem::add_term(const Exps& e, const Int& c) {
    Int v = c;
    if (ring_->characteristic() > 0) v = mod_floor(v, ring_->characteristic());
    if (v == 0) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, std::move(v));
        return;
    }
    it->second += v;
    if (ring_->characteristic() > 0) it->second = mod_floor(it->second, ring_->characteristic());
    if (it->second == 0) t_.erase(it);
}

void CoeffElem::normalize_insert(std::vector<std::pair<Exps, Int>> work) {
    const auto& N = ring_->characteristic();
    while (!work.empty()) {
        auto [e, c] = std::move(work.back());
        work.pop_back();
        if (N > 0) c = mod_floor(c, N);
        if (c == 0) continue;
        size_t i = 0;
        const size_t nv = ring_->nvars();
        for (; i < nv; ++i)
            if (e[i] >= static_cast<uint32_t>(ring_->relation(i).degree())) break;
        if (i == nv) {
            add_term(e, c);
            continue;
        }
        // rewrite v_i^d -> -(lower part of the relation)
        const IntPoly& rel = ring_->relation(i);
        const uint32_t d = static_cast<uint32_t>(rel.degree());
        Exps base = e;
        base[i] -= d;
        for (uint32_t j = 0; j < d; ++j) {
            Int rc = rel.coeff(j);
            if (rc == 0) continue;
            Exps e2 = base;
            e2[i] += j;
            work.emplace_back(std::move(e2), -rc * c);
        }
    }
}

CoeffElem CoeffElem::from_int(CoeffRingPtr ring, Int c) {
    CoeffElem r(std::move(ring));
    r.normalize_insert({{Exps(r.ring_->nvars(), 0), std::move(c)}});
    return r;
}

CoeffElem CoeffElem::variable(CoeffRingPtr ring, size_t idx) {
    if (idx >= ring->nvars()) throw std::invalid_argument("variable index out of range");
    CoeffElem r(std::move(ring));
    Exps e(r.ring_->nvars(), 0);
    e[idx] = 1;
    r.normalize_insert({{std::move(e), Int(1)}});
    return r;
}

CoeffElem CoeffElem::monomial(CoeffRingPtr ring, Exps exps, Int c) {
    CoeffElem r(std::move(ring));
    if (exps.size() != r.ring_->nvars()) throw std::invalid_argument("bad exponent vector");
    r.normalize_insert({{std::move(exps), std::move(c)}});
    return r;
}

CoeffElem CoeffElem::from_terms(CoeffRingPtr ring, const std::vector<std::pair<Exps, Int>>& terms) {
    CoeffElem r(std::move(ring));
    for (const auto& [e, c] : terms)
        if (e.size() != r.ring_->nvars()) throw std::invalid_argument("bad exponent vector");
    r.normalize_insert(terms);
    return r;
}

bool CoeffElem::is_one() const {
    if (t_.size() != 1) return false;
    const auto& [e, c] = *t_.begin();
    return c == 1 && std::all_of(e.begin(), e.end(), [](uint32_t x) { return x == 0; });
}

CoeffElem CoeffElem::operator+(const CoeffElem& o) const {
    check_same_ring(o);
    CoeffElem r = *this;
    for (const auto& [e, c] : o.t_) r.add_term(e, c);
    return r;
}

CoeffElem CoeffElem::operator-(const CoeffElem& o) const {
    check_same_ring(o);
    CoeffElem r = *this;
    for (const auto& [e, c] : o.t_) r.add_term(e, -c);
    return r;
}

CoeffElem CoeffElem::operator-() const {
    if (!ring_) throw std::invalid_argument("operation on detached element");
    CoeffElem r(ring_);
    for (const auto& [e, c] : t_) r.add_term(e, -c);
    return r;
}

CoeffElem CoeffElem::operator*(const CoeffElem& o) const {
    check_same_ring(o);
    CoeffElem r(ring_);
    std::vector<std::pair<Exps, Int>> work;
    work.reserve(t_.size() * o.t_.size());
    const size_t nv = ring_->nvars();
    for (const auto& [e1, c1] : t_)
        for (const auto& [e2, c2] : o.t_) {
            Exps e(nv);
            for (size_t i = 0; i < nv; ++i) e[i] = e1[i] + e2[i];
            work.emplace_back(std::move(e), c1 * c2);
        }
    r.normalize_insert(std::move(work));
    return r;
}

CoeffElem CoeffElem::pow(unsigned e) const {
    if (!ring_) throw std::invalid_argument("operation on detached element");
    CoeffElem acc = CoeffElem::from_int(ring_, 1);
    CoeffElem base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

bool CoeffElem::operator==(const CoeffElem& o) const {
    if (!ring_ || !o.ring_) return ring_ == o.ring_ && t_ == o.t_;
    if (ring_ != o.ring_ && !ring_->same_presentation(*o.ring_)) return false;
    return t_ == o.t_;
}

Int CoeffElem::eval_all_ones() const {
    Int s = 0;
    for (const auto& [e, c] : t_) s += c;
    if (ring_ && ring_->characteristic() > 0) s = mod_floor(s, ring_->characteristic());
    return s;
}

Int CoeffElem::height() const {
    Int h = 0;
    for (const auto& [e, c] : t_) {
        Int a = abs(c);
        if (a > h) h = a;
    }
    return h;
}

// ---------------------------------------------------------------------------
// unit inversion

std::optional<CoeffElem> coeff_unit_inverse(const CoeffElem& a) {
    const auto& ring = a.ring();
    if (!ring || a.is_zero()) return std::nullopt;
    const Int& N = ring->characteristic();

    if (ring->is_local()) {
        // unit iff augmentation nonzero; invert via geometric series on the
        // nilpotent part a/aug(a) - 1
        if (N <= 0) return std::nullopt;
        Int c = a.eval_all_ones();
        if (c == 0) return std::nullopt;
        auto cinv = inverse_mod(c, N);
        if (!cinv) return std::nullopt;
        CoeffElem ci = CoeffElem::from_int(ring, *cinv);
        CoeffElem u = a * ci;
        CoeffElem n = u - CoeffElem::from_int(ring, 1);
        CoeffElem acc = CoeffElem::from_int(ring, 1);
        CoeffElem pw = CoeffElem::from_int(ring, 1);
        size_t dim = 1;
        for (size_t i = 0; i < ring->nvars(); ++i) dim *= ring->relation(i).degree();
        for (size_t k = 1; k <= dim && !n.is_zero(); ++k) {
            pw = pw * (-n);
            if (pw.is_zero()) break;
            acc = acc + pw;
        }
        CoeffElem inv = acc * ci;
        if (inv * a == CoeffElem::from_int(ring, 1)) return inv;
        return std::nullopt;
    }

    // trivial +/- (scalar unit) * monomial recognition
    if (a.nterms() != 1) return std::nullopt;
    const auto& [e, c] = *a.terms().begin();
    Int cinv;
    if (N > 0) {
        auto iv = inverse_mod(c, N);
        if (!iv) return std::nullopt;
        cinv = *iv;
    } else {
        if (c != 1 && c != -1) return std::nullopt;
        cinv = c;
    }
    CoeffElem::Exps einv(e.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        auto M = ring->var_order(i);
        if (!M) return std::nullopt;
        einv[i] = static_cast<uint32_t>((*M - e[i] % *M) % *M);
    }
    CoeffElem inv = CoeffElem::monomial(ring, einv, cinv);
    if (inv * a == CoeffElem::from_int(ring, 1)) return inv;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// CoeffHom

CoeffHom::CoeffHom(CoeffRingPtr src, CoeffRingPtr dst, std::vector<CoeffElem> images)
    : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {
    if (images_.size() != src_->nvars())
        throw std::invalid_argument("need one image per source variable");
    for (const auto& img : images_)
        if (!img.ring() || !img.ring()->same_presentation(*dst_))
            throw std::invalid_argument("hom image lies in the wrong ring");
    if (src_->characteristic() > 0) {
        if (dst_->characteristic() == 0 ||
            !divides(dst_->characteristic(), src_->characteristic()))
            throw std::invalid_argument("characteristics incompatible");
    }
    // the images must satisfy the source relations
    for (size_t i = 0; i < images_.size(); ++i) {
        const IntPoly& rel = src_->relation(i);
        CoeffElem v = CoeffElem(dst_);
        for (int j = 0; j <= rel.degree(); ++j) {
            Int c = rel.coeff(j);
            if (c == 0) continue;
            v = v + images_[i].pow(static_cast<unsigned>(j)) * CoeffElem::from_int(dst_, c);
        }
        if (!v.is_zero()) throw std::invalid_argument("hom image violates a source relation");
    }
}

CoeffElem CoeffHom::apply(const CoeffElem& a) const {
    if (!a.ring() || !a.ring()->same_presentation(*src_))
        throw std::invalid_argument("hom applied to element of the wrong ring");
    CoeffElem r(dst_);
    for (const auto& [e, c] : a.terms()) {
        CoeffElem m = CoeffElem::from_int(dst_, c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) m = m * images_[i].pow(e[i]);
        r = r + m;
    }
    return r;
}

CoeffHom CoeffHom::compose(const CoeffHom& g, const CoeffHom& f) {
    if (!f.target()->same_presentation(*g.source()))
        throw std::invalid_argument("hom composition mismatch");
    std::vector<CoeffElem> images;
    images.reserve(f.images().size());
    for (const auto& img : f.images()) images.push_back(g.apply(img));
    return CoeffHom(f.source(), g.target(), std::move(images));
}

// ---------------------------------------------------------------------------
// finite enumeration helpers

std::vector<CoeffElem::Exps> monomial_basis(const CoeffRingPtr& ring, size_t cap) {
    size_t total = 1;
    for (size_t i = 0; i < ring->nvars(); ++i) {
        total *= static_cast<size_t>(ring->relation(i).degree());
        if (total > cap) throw std::invalid_argument("monomial basis larger than cap");
    }
    std::vector<CoeffElem::Exps> out;
    out.reserve(total);
    CoeffElem::Exps cur(ring->nvars(), 0);
    for (size_t n = 0; n < total; ++n) {
        out.push_back(cur);
        for (size_t i = 0; i < ring->nvars(); ++i) {
            if (++cur[i] < static_cast<uint32_t>(ring->relation(i).degree())) break;
            cur[i] = 0;
        }
    }
    return out;
}

std::vector<std::pair<CoeffElem, CoeffElem>> enumerate_ring_units(const CoeffRingPtr& ring,
                                                                  size_t cap) {
    const Int& N = ring->characteristic();
    if (N <= 0) throw std::invalid_argument("unit enumeration needs a finite ring");
    if (N.fits_ulong_p() == 0) throw std::invalid_argument("characteristic too large");
    unsigned long n = N.get_ui();
    auto basis = monomial_basis(ring, cap);
    double size = 1;
    for (size_t i = 0; i < basis.size(); ++i) size *= static_cast<double>(n);
    if (size > static_cast<double>(cap)) throw std::invalid_argument("ring larger than cap");

    std::vector<std::pair<CoeffElem, CoeffElem>> out;
    std::vector<unsigned long> digits(basis.size(), 0);
    while (true) {
        std::vector<std::pair<CoeffElem::Exps, Int>> terms;
        for (size_t i = 0; i < basis.size(); ++i)
            if (digits[i] != 0) terms.emplace_back(basis[i], Int(digits[i]));
        if (!terms.empty()) {
            CoeffElem a = CoeffElem::from_terms(ring, terms);
            if (auto inv = coeff_unit_inverse(a)) out.emplace_back(a, *inv);
        }
        size_t i = 0;
        for (; i < digits.size(); ++i) {
            if (++digits[i] < n) break;
            digits[i] = 0;
        }
        if (i == digits.size()) break;
    }
    return out;
}

}  // namespace stabfree
