#pragma once

#include <map>
#include <optional>
#include <vector>

#include "stabfree/coeff.hpp"
#include "stabfree/word.hpp"

namespace stabfree {

// Ring tag for R[F_m]: a coefficient ring plus the free-group rank. The
// finite abelian group part is always folded into the coefficient ring, so
// coefficients commute with words.
struct GroupRing {
    CoeffRingPtr coeff;
    unsigned ngens = 0;

    bool compatible(const GroupRing& o) const {
        return ngens == o.ngens && coeff && o.coeff && coeff->same_presentation(*o.coeff);
    }
};

// Sparse element of R[F_m]: finite map from reduced words to nonzero
// canonical coefficients. Immutable value type.
class GrElem {
public:
    using TermMap = std::map<Word, CoeffElem>;

    GrElem() = default;
    explicit GrElem(GroupRing ring) : r_(std::move(ring)) {}

    static GrElem zero(GroupRing ring) { return GrElem(std::move(ring)); }
    static GrElem one(GroupRing ring);
    static GrElem from_int(GroupRing ring, Int c);
    static GrElem from_coeff(GroupRing ring, const CoeffElem& c);
    static GrElem from_word(GroupRing ring, const Word& w);
    static GrElem term(GroupRing ring, const Word& w, const CoeffElem& c);

    const GroupRing& ring() const { return r_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_one() const;
    size_t support_size() const { return t_.size(); }
    CoeffElem coeff_at(const Word& w) const;

    GrElem operator+(const GrElem& o) const;
    GrElem operator-(const GrElem& o) const;
    GrElem operator*(const GrElem& o) const;
    GrElem operator-() const;
    GrElem pow(unsigned e) const;

    bool operator==(const GrElem& o) const;
    bool operator!=(const GrElem& o) const { return !(*this == o); }

    // Sum of all coefficients (image under every word -> 1).
    CoeffElem augmentation() const;

private:
    GroupRing r_;
    TermMap t_;
    void add_term(const Word& w, const CoeffElem& c);
    void check_same_ring(const GrElem& o) const;
};

// Coefficient homomorphisms extend word-wise.
GrElem apply_hom(const CoeffHom& h, const GrElem& a);

// Exact two-sided inverse of a = 1 + n where every coefficient of n lies in
// the nilpotent maximal ideal of a local coefficient ring. Computed as the
// truncated geometric series and verified by multiplication; nullopt when the
// powers fail to vanish within the guaranteed bound.
std::optional<GrElem> inverse_unipotent(const GrElem& a);

// The element 1 - v for the single variable of a local cyclic ring
// F_p[v]/(v^p - 1); generates the maximal ideal.
CoeffElem radical_generator(const CoeffRingPtr& ring);

// Coordinates of an element of F_p[C_p][F_m] in the basis 1, y, ..., y^{p-1}
// with y = 1 - v: exactly p layers of scalar group-ring elements over F_p.
struct YAdicExpansion {
    GroupRing source_ring;
    GroupRing scalar_ring;     // F_p with no variables, same word rank
    std::vector<GrElem> layers;  // size p, layer k is the y^k coordinate
};

YAdicExpansion y_adic_expand(const GrElem& a);
GrElem y_adic_reconstruct(const YAdicExpansion& x);

}  // namespace stabfree
