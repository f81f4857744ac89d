#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stabfree/ints.hpp"

namespace stabfree {

// Dense univariate polynomial over Z. Used for ring relations and for
// cyclotomic arithmetic; general element arithmetic lives in CoeffElem.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs);

    static IntPoly constant(Int c);
    static IntPoly monomial(unsigned deg, Int c = 1);
    static IntPoly cyclic(unsigned n);  // x^n - 1

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const std::vector<Int>& coeffs() const { return c_; }
    Int coeff(unsigned i) const { return i < c_.size() ? c_[i] : Int(0); }
    Int eval_one() const;

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;

    // Division with remainder by a monic divisor; exact over Z.
    static void divmod(const IntPoly& a, const IntPoly& monic, IntPoly& q, IntPoly& r);

    bool operator==(const IntPoly&) const = default;

private:
    std::vector<Int> c_;  // c_[i] * x^i, highest entry nonzero
    void trim();
};

IntPoly cyclotomic_poly(unsigned d);

// The quotient q with PHI_{p^2}(x) - q(x) * (x^p - 1) == p. The identity is
// re-verified with exact polynomial arithmetic before the value is returned.
IntPoly cyclotomic_identity_quotient(unsigned p);

class CoeffRing;
using CoeffRingPtr = std::shared_ptr<const CoeffRing>;

// Commutative coefficient ring Z[v_1,...,v_r] / (rel_1(v_1),...,rel_r(v_r), N)
// with one monic relation per variable and optional characteristic N > 0.
// Canonical form of an element: every exponent of v_i is below deg(rel_i) and
// every integer coefficient lies in [0, N) when N > 0.
class CoeffRing {
public:
    static CoeffRingPtr make(std::vector<std::string> variables, std::vector<IntPoly> relations,
                             Int characteristic, bool local = false, bool integral_domain = false);

    size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& variables() const { return vars_; }
    const IntPoly& relation(size_t i) const { return rels_[i]; }
    const Int& characteristic() const { return char_; }

    // Local ring whose maximal ideal (the augmentation kernel) is nilpotent,
    // e.g. F_p[x]/(x^p - 1). Drives unit inversion by geometric series.
    bool is_local() const { return local_; }
    bool is_integral_domain() const { return domain_; }

    std::optional<size_t> var_index(std::string_view name) const;
    // Multiplicative order of variable i when finite (v^M == 1 in the ring).
    std::optional<unsigned> var_order(size_t i) const { return order_[i]; }

    bool same_presentation(const CoeffRing& o) const;

private:
    CoeffRing() = default;
    std::vector<std::string> vars_;
    std::vector<IntPoly> rels_;
    Int char_;
    bool local_ = false;
    bool domain_ = false;
    std::vector<std::optional<unsigned>> order_;
};

// Element of a CoeffRing in canonical form: sparse map from exponent vectors
// to nonzero integers.
class CoeffElem {
public:
    using Exps = std::vector<uint32_t>;
    using TermMap = std::map<Exps, Int>;

    CoeffElem() = default;  // detached null element; only assignable
    explicit CoeffElem(CoeffRingPtr ring) : ring_(std::move(ring)) {}

    static CoeffElem from_int(CoeffRingPtr ring, Int c);
    static CoeffElem variable(CoeffRingPtr ring, size_t idx);
    static CoeffElem monomial(CoeffRingPtr ring, Exps exps, Int c);
    static CoeffElem from_terms(CoeffRingPtr ring, const std::vector<std::pair<Exps, Int>>& terms);

    const CoeffRingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_one() const;
    size_t nterms() const { return t_.size(); }

    CoeffElem operator+(const CoeffElem& o) const;
    CoeffElem operator-(const CoeffElem& o) const;
    CoeffElem operator*(const CoeffElem& o) const;
    CoeffElem operator-() const;
    CoeffElem pow(unsigned e) const;

    bool operator==(const CoeffElem& o) const;
    bool operator!=(const CoeffElem& o) const { return !(*this == o); }

    // Image under v_i -> 1 for all i (reduced mod the characteristic).
    Int eval_all_ones() const;
    // Largest |coefficient| over all terms.
    Int height() const;

private:
    CoeffRingPtr ring_;
    TermMap t_;
    void add_term(const Exps& e, const Int& c);
    void normalize_insert(std::vector<std::pair<Exps, Int>> work);
    void check_same_ring(const CoeffElem& o) const;
    friend class CoeffHom;
};

// Exact two-sided inverse of a unit, when recognized. For local rings the
// criterion is a nonzero augmentation and the inverse comes from the
// geometric series on the nilpotent part. In characteristic zero only
// +/- monomials in variables of finite order are recognized.
std::optional<CoeffElem> coeff_unit_inverse(const CoeffElem& a);

// Ring homomorphism determined by the image of each source variable. The
// images are checked against the source relations at construction.
class CoeffHom {
public:
    CoeffHom(CoeffRingPtr src, CoeffRingPtr dst, std::vector<CoeffElem> images);

    const CoeffRingPtr& source() const { return src_; }
    const CoeffRingPtr& target() const { return dst_; }
    const std::vector<CoeffElem>& images() const { return images_; }

    CoeffElem apply(const CoeffElem& a) const;
    static CoeffHom compose(const CoeffHom& g, const CoeffHom& f);  // g after f

private:
    CoeffRingPtr src_, dst_;
    std::vector<CoeffElem> images_;
};

// All unit/inverse pairs of a finite coefficient ring (characteristic > 0),
// found by direct inversion of every element. Throws if the ring has more
// than `cap` elements.
std::vector<std::pair<CoeffElem, CoeffElem>> enumerate_ring_units(const CoeffRingPtr& ring,
                                                                  size_t cap = 200000);

// All canonical exponent vectors of the ring (the monomial basis).
std::vector<CoeffElem::Exps> monomial_basis(const CoeffRingPtr& ring, size_t cap = 200000);

}  // namespace stabfree
