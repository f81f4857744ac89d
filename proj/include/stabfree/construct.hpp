#pragma once

#include "stabfree/milnor.hpp"

namespace stabfree {

// The pullback square with coefficient corners
//   Z[x]/(x^{p^2}-1) -> Z[x]/(PHI_{p^2});  Z[x]/(x^p-1) -> F_p[x]/(x^p-1)
// tensored with the free group on m generators.
MilnorSquare build_square_cp2(unsigned p, unsigned m);

// The two-variable square with coefficient corners
//   Z[x,y]/(x^p-1, y^p-1) -> Z[x,y]/(1+x+..+x^{p-1}, y^p-1)
//   Z[y]/(y^p-1)          -> F_p[y]/(y^p-1)
// (x is killed to 1 along the bottom), tensored with F_m.
MilnorSquare build_square_cp_cp(unsigned p, unsigned m);

// The quotient square of a finite abelian group G (given by invariant
// factors) by a cyclic subgroup H generated by a power of one generator:
//   Z[G] -> Z[G]/(sum over H);  Z[G/H] -> (Z/|H|)[G/H].
MilnorSquare build_sigma_square(const std::vector<unsigned>& invariant_factors,
                                const std::vector<long long>& subgroup_generator, unsigned m);

// Maps the interface labels A | B | sigma.
MilnorSquare build_square(const std::string& which, unsigned p, unsigned m,
                          const std::vector<unsigned>& invariant_factors = {},
                          const std::vector<long long>& subgroup_generator = {});

// The standard corner ring F_p[x]/(x^p - 1) with m word generators.
GroupRing fp_cp_group_ring(unsigned p, unsigned m);

struct CommutatorSpec {
    unsigned p = 2;
    unsigned m = 2;
    unsigned n = 1;
};

// The unit commutator (1 + y t) s^n (1 + y t)^{-1} s^{-n} in F_p[C_p][F_m],
// with y = 1 - x, s = g1, t = g2. Computed by exact multiplication with the
// geometric-series inverse and verified against the commutator identity.
GrElem unit_commutator(const CommutatorSpec& spec);
GrElem unit_commutator(const CommutatorSpec& spec, const GroupRing& corner);

// The class of the n-th commutator over the base corner of a square, with
// its inverse witness.
CosetClass commutator_class(const MilnorSquare& sq, unsigned n);

struct TraceStep {
    unsigned layer = 0;
    std::string constraint;
    std::string resolution;
};

struct EquivalenceWitness {
    CoeffElem gamma;
    Word w, v;
};

struct DistinctnessVerdict {
    bool distinct = false;
    std::vector<TraceStep> trace;
    std::optional<EquivalenceWitness> witness;  // set for equivalent pairs, verified
};

// Decides whether the classes of the commutators with indices n and n2 agree
// under unknown unit gamma in F_p[C_p]^* and words w, v: layer y^0 forces
// gamma scalar part 1 and v = w^{-1}; layer y^1 reduces to exact free-group
// conjugation equations solved through solve_conjugation and coset
// intersection (both multiset matchings are tried in characteristic 2).
// Equivalent verdicts carry a witness that is re-verified by multiplication.
DistinctnessVerdict certify_distinct(unsigned p, unsigned m, unsigned n, unsigned n2);

struct BruteHit {
    CoeffElem gamma;
    Word w;
};

struct BruteForceReport {
    std::vector<BruteHit> hits;
    unsigned long long candidates = 0;
};

// Independent oracle: enumerate every word of length <= len_bound and every
// unit of F_p[C_p] (all augmentation-nonzero elements) and test
// delta_n == gamma * w * delta_n2 * w^{-1} by exact multiplication.
BruteForceReport brute_force_check(unsigned p, unsigned m, unsigned n, unsigned n2,
                                   unsigned len_bound);

std::vector<Word> words_up_to_length(unsigned ngens, unsigned len_bound);

struct TrivializationCert {
    MilnorSquare square;
    unsigned p = 2, m = 2, n = 1;
    FactorList lifted;  // elementary factors over the plus corner
};

// Stably-free certificate: the unit commutator as <= 18 elementary factors
// over the base ring of the cp2 square, lifted through the psi_plus section.
// psi_plus of the lifted product equals diag(delta_n, 1) exactly.
TrivializationCert trivialize(unsigned p, unsigned m, unsigned n);
void verify_trivialization(const TrivializationCert& cert);  // throws VerificationError

struct UnitSearchResult {
    std::vector<std::pair<GrElem, GrElem>> unit_pairs;   // (u, u^{-1}), both inside the box
    std::vector<GrElem> nontrivial_units;                // support >= 2
    unsigned long long candidates = 0;
};

// Exhaustive two-sided unit search over all elements with at most
// support_bound words of length <= len_bound and coefficient height
// <= height_bound. For integral-domain coefficients the candidate set is
// first cut down by the abelianization map to the Laurent ring, which can
// only send units to single monomials.
UnitSearchResult unit_search(const GroupRing& ring, unsigned support_bound,
                             unsigned height_bound, unsigned len_bound);

}  // namespace stabfree
