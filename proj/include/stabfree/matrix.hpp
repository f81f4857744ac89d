#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stabfree/grelem.hpp"

namespace stabfree {

struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Square matrix over a group ring.
class RMatrix {
public:
    RMatrix(GroupRing ring, unsigned n);
    static RMatrix identity(GroupRing ring, unsigned n);
    static RMatrix diagonal(GroupRing ring, std::vector<GrElem> entries);

    unsigned size() const { return n_; }
    const GroupRing& ring() const { return r_; }
    const GrElem& at(unsigned i, unsigned j) const { return e_[i * n_ + j]; }
    void set(unsigned i, unsigned j, GrElem v);

    RMatrix operator*(const RMatrix& o) const;
    bool operator==(const RMatrix& o) const;
    bool operator!=(const RMatrix& o) const { return !(*this == o); }

private:
    GroupRing r_;
    unsigned n_;
    std::vector<GrElem> e_;
};

// An elementary matrix E(i,j;a) = I + a eps(i,j) with i != j, or a diagonal
// matrix whose entries carry verified two-sided inverses.
class ElemFactor {
public:
    enum class Kind { Elementary, Diagonal };

    static ElemFactor elementary(unsigned i, unsigned j, GrElem coeff);
    static ElemFactor diagonal(std::vector<GrElem> entries, std::vector<GrElem> inverses);

    Kind kind() const { return kind_; }
    unsigned i() const { return i_; }
    unsigned j() const { return j_; }
    const GrElem& coeff() const { return coeff_; }
    const std::vector<GrElem>& diag() const { return diag_; }
    const std::vector<GrElem>& diag_inv() const { return dinv_; }

    ElemFactor inverse() const;
    RMatrix to_matrix(const GroupRing& ring, unsigned n) const;

private:
    ElemFactor() = default;
    Kind kind_ = Kind::Elementary;
    unsigned i_ = 0, j_ = 0;
    GrElem coeff_;
    std::vector<GrElem> diag_, dinv_;
};

// Ordered factorization certificate: the product of the factors must equal
// the claimed matrix exactly.
struct FactorList {
    std::vector<ElemFactor> factors;
    RMatrix claimed;

    RMatrix product() const;
    bool verify() const { return product() == claimed; }
    bool all_elementary() const;
};

// diag(u, u^{-1}) as exactly six elementary factors:
// E12(u) E21(-u^{-1}) E12(u) E12(-1) E21(1) E12(-1).
FactorList whitehead_diag(const GrElem& u, const GrElem& u_inv);

// diag(aba^{-1}b^{-1}, 1) as at most 18 elementary factors, via
// diag(a,a^{-1}) diag(b,b^{-1}) diag((ba)^{-1},ba).
FactorList commutator_diag(const GrElem& a, const GrElem& a_inv, const GrElem& b,
                           const GrElem& b_inv);

// Rewrites a factor sequence with the same product into the shape
// Diagonal * Elementary...* by commuting diagonal factors to the front:
// e(i,j;a) d == d e(i,j; d_i^{-1} a d_j).
FactorList normalize_diag_front(std::vector<ElemFactor> factors, RMatrix claimed);

// Data of a nilpotent ideal I of the coefficient ring: the quotient map
// L -> L/I, a coefficient section of it, and a nilpotency bound.
struct NilpotentQuotient {
    CoeffHom to_quotient;
    std::function<CoeffElem(const CoeffElem&)> lift;
    unsigned nilpotency = 2;

    GrElem lift_elem(const GrElem& a) const;
};

using QuotientDiagonalizer = std::function<std::optional<FactorList>(const RMatrix&)>;

// D * (elementary list) factorization of an invertible matrix of scalars over
// a prime field, by Gauss reduction with recorded row/column operations.
// nullopt when the matrix is singular.
std::optional<FactorList> gaussian_diagonalize_field(const RMatrix& a);

// Factors an invertible matrix over L as Diagonal * Elementary...*, given
// that L/I is generalized Euclidean: diagonalize the image in L/I, lift the
// inverse factors, and clear the residue (== I mod I) with unit pivots
// inverted by geometric series. The default diagonalizer handles scalar
// prime-field quotients. nullopt when a pivot fails to invert (the input was
// not invertible) or the quotient step fails.
std::optional<FactorList> diagonal_reduce_nilpotent(const RMatrix& a, const NilpotentQuotient& nq,
                                                    QuotientDiagonalizer diagonalizer = {});

// Quotient data for the radical (1 - v) of a local cyclic ring F_p[v]/(v^p-1).
NilpotentQuotient radical_quotient(const CoeffRingPtr& local_ring);

}  // namespace stabfree
