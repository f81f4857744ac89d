#include "stabfree/matrix.hpp"

namespace stabfree {

// ---------------------------------------------------------------------------
// RMatrix

RMatrix::RMatrix(GroupRing ring, unsigned n)
    : r_(std::move(ring)), n_(n), e_(static_cast<size_t>(n) * n, GrElem::zero(r_)) {
    if (n == 0) throw std::invalid_argument("matrix size must be positive");
}

RMatrix RMatrix::identity(GroupRing ring, unsigned n) {
    RMatrix m(std::move(ring), n);
    for (unsigned i = 0; i < n; ++i) m.set(i, i, GrElem::one(m.r_));
    return m;
}

RMatrix RMatrix::diagonal(GroupRing ring, std::vector<GrElem> entries) {
    RMatrix m(std::move(ring), static_cast<unsigned>(entries.size()));
    for (unsigned i = 0; i < m.n_; ++i) m.set(i, i, std::move(entries[i]));
    return m;
}

void RMatrix::set(unsigned i, unsigned j, GrElem v) {
    if (i >= n_ || j >= n_) throw std::invalid_argument("matrix index out of range");
    if (!v.ring().compatible(r_)) throw std::invalid_argument("matrix entry ring mismatch");
    e_[i * n_ + j] = std::move(v);
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
    if (n_ != o.n_ || !r_.compatible(o.r_)) throw std::invalid_argument("matrix shape mismatch");
    RMatrix out(r_, n_);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) {
            GrElem s = GrElem::zero(r_);
            for (unsigned k = 0; k < n_; ++k) s = s + at(i, k) * o.at(k, j);
            out.set(i, j, std::move(s));
        }
    return out;
}

bool RMatrix::operator==(const RMatrix& o) const {
    if (n_ != o.n_ || !r_.compatible(o.r_)) return false;
    for (size_t k = 0; k < e_.size(); ++k)
        if (e_[k] != o.e_[k]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// ElemFactor

ElemFactor ElemFactor::elementary(unsigned i, unsigned j, GrElem coeff) {
    if (i == j) throw std::invalid_argument("elementary factor needs i != j");
    ElemFactor f;
    f.kind_ = Kind::Elementary;
    f.i_ = i;
    f.j_ = j;
    f.coeff_ = std::move(coeff);
    return f;
}

ElemFactor ElemFactor::diagonal(std::vector<GrElem> entries, std::vector<GrElem> inverses) {
    if (entries.empty() || entries.size() != inverses.size())
        throw std::invalid_argument("diagonal factor needs matching entry/inverse lists");
    for (size_t k = 0; k < entries.size(); ++k) {
        GrElem one = GrElem::one(entries[k].ring());
        if (entries[k] * inverses[k] != one || inverses[k] * entries[k] != one)
            throw std::invalid_argument("diagonal entry inverse check failed");
    }
    ElemFactor f;
    f.kind_ = Kind::Diagonal;
    f.diag_ = std::move(entries);
    f.dinv_ = std::move(inverses);
    return f;
}

ElemFactor ElemFactor::inverse() const {
    if (kind_ == Kind::Elementary) return elementary(i_, j_, -coeff_);
    ElemFactor f;
    f.kind_ = Kind::Diagonal;
    f.diag_ = dinv_;
    f.dinv_ = diag_;
    return f;
}

RMatrix ElemFactor::to_matrix(const GroupRing& ring, unsigned n) const {
    if (kind_ == Kind::Elementary) {
        if (i_ >= n || j_ >= n) throw std::invalid_argument("factor index exceeds matrix size");
        RMatrix m = RMatrix::identity(ring, n);
        m.set(i_, j_, coeff_);
        return m;
    }
    if (diag_.size() != n) throw std::invalid_argument("diagonal factor size mismatch");
    return RMatrix::diagonal(ring, diag_);
}

RMatrix FactorList::product() const {
    RMatrix acc = RMatrix::identity(claimed.ring(), claimed.size());
    for (const auto& f : factors) acc = acc * f.to_matrix(claimed.ring(), claimed.size());
    return acc;
}

bool FactorList::all_elementary() const {
    for (const auto& f : factors)
        if (f.kind() != ElemFactor::Kind::Elementary) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Whitehead factorizations

FactorList whitehead_diag(const GrElem& u, const GrElem& u_inv) {
    const GroupRing& ring = u.ring();
    GrElem one = GrElem::one(ring);
    if (u * u_inv != one || u_inv * u != one)
        throw std::invalid_argument("whitehead_diag: inverse check failed");
    GrElem minus_one = -one;
    FactorList fl{{
                      ElemFactor::elementary(0, 1, u),
                      ElemFactor::elementary(1, 0, -u_inv),
                      ElemFactor::elementary(0, 1, u),
                      ElemFactor::elementary(0, 1, minus_one),
                      ElemFactor::elementary(1, 0, one),
                      ElemFactor::elementary(0, 1, minus_one),
                  },
                  RMatrix::diagonal(ring, {u, u_inv})};
    if (!fl.verify()) throw std::logic_error("whitehead factor product mismatch");
    return fl;
}

FactorList commutator_diag(const GrElem& a, const GrElem& a_inv, const GrElem& b,
                           const GrElem& b_inv) {
    const GroupRing& ring = a.ring();
    GrElem ba = b * a;
    GrElem ba_inv = a_inv * b_inv;
    FactorList f1 = whitehead_diag(a, a_inv);
    FactorList f2 = whitehead_diag(b, b_inv);
    FactorList f3 = whitehead_diag(ba_inv, ba);
    std::vector<ElemFactor> factors;
    factors.insert(factors.end(), f1.factors.begin(), f1.factors.end());
    factors.insert(factors.end(), f2.factors.begin(), f2.factors.end());
    factors.insert(factors.end(), f3.factors.begin(), f3.factors.end());
    GrElem comm = a * b * a_inv * b_inv;
    FactorList fl{std::move(factors), RMatrix::diagonal(ring, {comm, GrElem::one(ring)})};
    if (!fl.verify()) throw std::logic_error("commutator factor product mismatch");
    return fl;
}

FactorList normalize_diag_front(std::vector<ElemFactor> factors, RMatrix claimed) {
    const unsigned n = claimed.size();
    const GroupRing& ring = claimed.ring();
    std::vector<GrElem> d(n, GrElem::one(ring));
    std::vector<GrElem> dinv(n, GrElem::one(ring));
    std::vector<ElemFactor> elems;
    for (auto& f : factors) {
        if (f.kind() == ElemFactor::Kind::Elementary) {
            elems.push_back(std::move(f));
            continue;
        }
        if (f.diag().size() != n) throw std::invalid_argument("diagonal factor size mismatch");
        // D e_1..e_k f == (D f) (f^{-1} e_1 f) .. (f^{-1} e_k f)
        for (auto& e : elems)
            e = ElemFactor::elementary(e.i(), e.j(),
                                       f.diag_inv()[e.i()] * e.coeff() * f.diag()[e.j()]);
        for (unsigned i = 0; i < n; ++i) {
            d[i] = d[i] * f.diag()[i];
            dinv[i] = f.diag_inv()[i] * dinv[i];
        }
    }
    std::vector<ElemFactor> out;
    out.push_back(ElemFactor::diagonal(std::move(d), std::move(dinv)));
    out.insert(out.end(), elems.begin(), elems.end());
    FactorList fl{std::move(out), std::move(claimed)};
    if (!fl.verify()) throw std::logic_error("diagonal normalization changed the product");
    return fl;
}

// ---------------------------------------------------------------------------
// Gauss diagonalization over a scalar prime field

namespace {

bool is_scalar_field_ring(const GroupRing& ring) {
    return ring.coeff->nvars() == 0 && ring.coeff->characteristic() > 0 &&
           ring.coeff->characteristic().fits_ulong_p() &&
           is_prime(ring.coeff->characteristic().get_ui());
}

std::optional<GrElem> scalar_inverse(const GrElem& a) {
    if (a.is_zero()) return std::nullopt;
    if (a.support_size() != 1 || !a.terms().begin()->first.is_identity()) return std::nullopt;
    auto inv = coeff_unit_inverse(a.terms().begin()->second);
    if (!inv) return std::nullopt;
    return GrElem::from_coeff(a.ring(), *inv);
}

}  // namespace

std::optional<FactorList> gaussian_diagonalize_field(const RMatrix& a) {
    if (!is_scalar_field_ring(a.ring()))
        throw std::invalid_argument("built-in diagonalizer needs a scalar prime field");
    for (unsigned i = 0; i < a.size(); ++i)
        for (unsigned j = 0; j < a.size(); ++j)
            if (!a.at(i, j).is_zero() && !a.at(i, j).terms().begin()->first.is_identity())
                throw std::invalid_argument("built-in diagonalizer needs scalar entries");

    const unsigned n = a.size();
    const GroupRing& ring = a.ring();
    RMatrix x = a;
    std::vector<ElemFactor> left, right;  // in application order

    auto row_op = [&](unsigned r, unsigned k, const GrElem& c) {
        // row_r += c * row_k
        for (unsigned j = 0; j < n; ++j) x.set(r, j, x.at(r, j) + c * x.at(k, j));
        left.push_back(ElemFactor::elementary(r, k, c));
    };
    auto col_op = [&](unsigned k, unsigned c, const GrElem& b) {
        // col_c += col_k * b
        for (unsigned i = 0; i < n; ++i) x.set(i, c, x.at(i, c) + x.at(i, k) * b);
        right.push_back(ElemFactor::elementary(k, c, b));
    };

    for (unsigned k = 0; k < n; ++k) {
        if (x.at(k, k).is_zero()) {
            unsigned r = k + 1;
            while (r < n && x.at(r, k).is_zero()) ++r;
            if (r == n) return std::nullopt;  // singular
            row_op(k, r, GrElem::one(ring));
        }
        auto pinv = scalar_inverse(x.at(k, k));
        if (!pinv) return std::nullopt;
        for (unsigned r = 0; r < n; ++r)
            if (r != k && !x.at(r, k).is_zero()) row_op(r, k, -(x.at(r, k) * *pinv));
        for (unsigned c = 0; c < n; ++c)
            if (c != k && !x.at(k, c).is_zero()) col_op(k, c, -(*pinv * x.at(k, c)));
    }

    std::vector<GrElem> d, dinv;
    for (unsigned i = 0; i < n; ++i) {
        d.push_back(x.at(i, i));
        auto iv = scalar_inverse(x.at(i, i));
        if (!iv) return std::nullopt;
        dinv.push_back(*iv);
    }

    // L_m..L_1 A R_1..R_l == X  =>  A == L_1^{-1}..L_m^{-1} X R_l^{-1}..R_1^{-1}
    std::vector<ElemFactor> seq;
    for (const auto& f : left) seq.push_back(f.inverse());
    seq.push_back(ElemFactor::diagonal(std::move(d), std::move(dinv)));
    for (auto it = right.rbegin(); it != right.rend(); ++it) seq.push_back(it->inverse());
    return normalize_diag_front(std::move(seq), a);
}

// ---------------------------------------------------------------------------
// reduction through a nilpotent ideal

GrElem NilpotentQuotient::lift_elem(const GrElem& a) const {
    GroupRing target{to_quotient.source(), a.ring().ngens};
    GrElem out = GrElem::zero(target);
    for (const auto& [w, c] : a.terms()) out = out + GrElem::term(target, w, lift(c));
    return out;
}

NilpotentQuotient radical_quotient(const CoeffRingPtr& local_ring) {
    if (!local_ring->is_local() || local_ring->characteristic() <= 0)
        throw std::invalid_argument("radical quotient needs a local ring of prime characteristic");
    const Int p = local_ring->characteristic();
    CoeffRingPtr fp = CoeffRing::make({}, {}, p, /*local=*/true);
    std::vector<CoeffElem> images(local_ring->nvars(), CoeffElem::from_int(fp, 1));
    NilpotentQuotient nq{CoeffHom(local_ring, fp, std::move(images)),
                         [local_ring](const CoeffElem& c) {
                             return CoeffElem::from_int(local_ring, c.eval_all_ones());
                         },
                         1};
    unsigned dim = 1;
    for (size_t i = 0; i < local_ring->nvars(); ++i)
        dim *= static_cast<unsigned>(local_ring->relation(i).degree());
    nq.nilpotency = dim;
    return nq;
}

std::optional<FactorList> diagonal_reduce_nilpotent(const RMatrix& a, const NilpotentQuotient& nq,
                                                    QuotientDiagonalizer diagonalizer) {
    const unsigned n = a.size();
    const GroupRing& ring = a.ring();
    GroupRing qring{nq.to_quotient.target(), ring.ngens};

    RMatrix aq(qring, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) aq.set(i, j, apply_hom(nq.to_quotient, a.at(i, j)));

    std::optional<FactorList> ql;
    if (diagonalizer)
        ql = diagonalizer(aq);
    else
        ql = gaussian_diagonalize_field(aq);
    if (!ql || !ql->verify()) return std::nullopt;

    // lift the inverses of the quotient factors, in reverse order
    std::vector<ElemFactor> lifted;
    for (auto it = ql->factors.rbegin(); it != ql->factors.rend(); ++it) {
        ElemFactor inv = it->inverse();
        if (inv.kind() == ElemFactor::Kind::Elementary) {
            lifted.push_back(ElemFactor::elementary(inv.i(), inv.j(), nq.lift_elem(inv.coeff())));
        } else {
            std::vector<GrElem> d, dinv;
            for (const auto& e : inv.diag()) {
                GrElem le = nq.lift_elem(e);
                auto li = scalar_inverse(le);
                if (!li) {
                    auto ui = inverse_unipotent(le);
                    if (!ui) return std::nullopt;
                    li = *ui;
                }
                d.push_back(le);
                dinv.push_back(*li);
            }
            lifted.push_back(ElemFactor::diagonal(std::move(d), std::move(dinv)));
        }
    }

    RMatrix x = a;
    for (const auto& f : lifted) x = x * f.to_matrix(ring, n);

    // x == I mod the ideal; clear it with unit pivots
    std::vector<ElemFactor> left, right;
    auto row_op = [&](unsigned r, unsigned k, const GrElem& c) {
        for (unsigned j = 0; j < n; ++j) x.set(r, j, x.at(r, j) + c * x.at(k, j));
        left.push_back(ElemFactor::elementary(r, k, c));
    };
    auto col_op = [&](unsigned k, unsigned c, const GrElem& b) {
        for (unsigned i = 0; i < n; ++i) x.set(i, c, x.at(i, c) + x.at(i, k) * b);
        right.push_back(ElemFactor::elementary(k, c, b));
    };

    for (unsigned k = n; k-- > 0;) {
        auto pinv = inverse_unipotent(x.at(k, k));
        if (!pinv) return std::nullopt;  // pivot not a unit: input was not invertible
        for (unsigned r = 0; r < k; ++r)
            if (!x.at(r, k).is_zero()) row_op(r, k, -(x.at(r, k) * *pinv));
        for (unsigned c = 0; c < k; ++c)
            if (!x.at(k, c).is_zero()) col_op(k, c, -(*pinv * x.at(k, c)));
    }

    std::vector<GrElem> delta, delta_inv;
    for (unsigned i = 0; i < n; ++i) {
        auto iv = inverse_unipotent(x.at(i, i));
        if (!iv) return std::nullopt;
        delta.push_back(x.at(i, i));
        delta_inv.push_back(*iv);
    }

    // A (lifted...) == L_1^{-1}..L_M^{-1} Delta R_L^{-1}..R_1^{-1}
    std::vector<ElemFactor> seq;
    for (const auto& f : left) seq.push_back(f.inverse());
    seq.push_back(ElemFactor::diagonal(std::move(delta), std::move(delta_inv)));
    for (auto it = right.rbegin(); it != right.rend(); ++it) seq.push_back(it->inverse());
    for (auto it = lifted.rbegin(); it != lifted.rend(); ++it) seq.push_back(it->inverse());
    return normalize_diag_front(std::move(seq), a);
}

}  // namespace stabfree
