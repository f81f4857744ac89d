#pragma once

#include <string>

#include "stabfree/matrix.hpp"

namespace stabfree {

struct SquareError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Data driving pullback reconstruction. All squares in this library arise
// from one pattern: a distinguished variable v of the fibre ring has relation
// v^{ek} - 1 which factors as sigma * tau with
//   sigma = 1 + v^e + ... + v^{e(k-1)}   (the A- relation)
//   tau   = v^e - 1                      (the A+ relation; v is dropped when e == 1)
// and sigma == k mod tau, so the base ring has characteristic k.
struct PullbackCore {
    size_t var_index = 0;
    unsigned e = 1;
    unsigned k = 2;
    CoeffElem sigma, tau, tau_quot;  // in the fibre coefficient ring; sigma - k == tau_quot * tau
};

// A pullback square of group rings with surjective bottom map psi_plus:
//
//        fibre ----pi_minus---> minus
//          |                      |
//       pi_plus               psi_minus
//          |                      |
//        plus  ----psi_plus---> base
//
// The fibre ring is represented concretely; `pullback` reconstructs its
// elements from compatible corner pairs, which makes exactness testable.
class MilnorSquare {
public:
    GroupRing fibre, plus, minus, base;
    CoeffHom pi_plus, pi_minus, psi_plus, psi_minus;
    PullbackCore core;
    std::string kind;  // "A", "B" or "sigma"
    std::vector<unsigned> group_orders;       // invariant factors of the folded group
    std::vector<long long> subgroup_generator;  // sigma squares only

    static MilnorSquare make(GroupRing fibre, GroupRing plus, GroupRing minus, GroupRing base,
                             CoeffHom pi_plus, CoeffHom pi_minus, CoeffHom psi_plus,
                             CoeffHom psi_minus, PullbackCore core, std::string kind,
                             std::vector<unsigned> group_orders,
                             std::vector<long long> subgroup_generator, bool validated = true);

    // Coefficient lift along psi_plus: integers to [0, k), variables fixed.
    // Idempotent under psi_plus; checked at construction.
    CoeffElem section_plus(const CoeffElem& a) const;
    GrElem section_plus(const GrElem& a) const;
    // A preimage lift along psi_minus (surjective for all squares here).
    CoeffElem section_minus(const CoeffElem& a) const;
    GrElem section_minus(const GrElem& a) const;

    void validate() const;  // throws SquareError

private:
    MilnorSquare(GroupRing f, GroupRing p, GroupRing mi, GroupRing b, CoeffHom pp, CoeffHom pm,
                 CoeffHom sp, CoeffHom sm, PullbackCore c);
};

// Builds the core polynomials for a fibre coefficient ring whose variable
// var has relation v^{ek} - 1.
PullbackCore build_pullback_core(const CoeffRingPtr& fibre_ring, size_t var_index, unsigned e,
                                 unsigned k);

// The unique f in the fibre ring with pi_plus(f) == a_plus and
// pi_minus(f) == a_minus, or nullopt when the base images differ. The result
// is recomputed along two independent routes (sigma-multiple and
// tau-multiple form) and compared before returning.
std::optional<GrElem> pullback(const MilnorSquare& sq, const GrElem& a_plus,
                               const GrElem& a_minus);
std::optional<CoeffElem> pullback_coeff(const MilnorSquare& sq, const CoeffElem& a_plus,
                                        const CoeffElem& a_minus);

struct ExactnessReport {
    unsigned samples = 0;
    unsigned failures = 0;
    std::vector<std::string> counterexamples;
    bool ok() const { return failures == 0; }
};

// Randomized exactness evidence: round trips of fibre elements, pullbacks of
// independently constructed compatible pairs, and rejection of incompatible
// pairs.
ExactnessReport check_exactness(const MilnorSquare& sq, unsigned samples, unsigned long seed);

// Locally free rank-1 module <plus, minus; alpha> over the fibre ring,
// presented by a gluing unit alpha of the base ring: members are pairs (u, v)
// with alpha * psi_plus(u) == psi_minus(v).
class Rank1Module {
public:
    Rank1Module(MilnorSquare sq, GrElem alpha, GrElem alpha_inv);

    const MilnorSquare& square() const { return sq_; }
    const GrElem& gluing_unit() const { return alpha_; }

    bool contains(const GrElem& u, const GrElem& v) const;
    // (u, v) . f = (u pi_plus(f), v pi_minus(f)); preserves membership.
    std::pair<GrElem, GrElem> act(const std::pair<GrElem, GrElem>& member, const GrElem& f) const;
    // A member with prescribed plus part, via the psi_minus section.
    std::pair<GrElem, GrElem> member_from_plus(const GrElem& u) const;

private:
    MilnorSquare sq_;
    GrElem alpha_, alpha_inv_;
};

Rank1Module glue_rank1(const MilnorSquare& sq, const GrElem& alpha, const GrElem& alpha_inv);

// A double-coset class of a base-ring unit under images of the corner unit
// groups; these classes classify the rank-1 locally free modules over the
// fibre ring. Equality of classes is never decided here: the construction
// layer's certifier (or its bounded brute-force search) is the only judge.
struct CosetClass {
    MilnorSquare square;
    GrElem representative;
    GrElem representative_inv;

    Rank1Module module() const { return glue_rank1(square, representative, representative_inv); }
};

// Replaces every elementary factor E(i,j;a) over the base ring by
// E(i,j; lift(a)) over the plus ring; the psi_plus image of the lifted
// product is checked against the original claimed product.
FactorList lift_factors(const FactorList& fl, const MilnorSquare& sq);

}  // namespace stabfree
