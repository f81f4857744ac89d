#pragma once

#include <string>
#include <string_view>

#include "stabfree/grelem.hpp"

namespace stabfree {

// Text grammar shared by coefficients, words and group-ring elements:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' ['-'] INT]
//   atom   := INT | NAME | '(' expr ')'
// NAME resolves to a coefficient-ring variable, or to a free-group generator
// g1..gm (aliases s = g1, t = g2 when m == 2). Negative exponents are only
// allowed on group generators. Printing and parsing round-trip exactly.

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

GrElem parse_grelem(const GroupRing& ring, std::string_view text);
CoeffElem parse_coeff(const CoeffRingPtr& ring, std::string_view text);
Word parse_word(unsigned ngens, std::string_view text);

// Relation polynomials: univariate over Z in a named variable.
IntPoly parse_intpoly(std::string_view var, std::string_view text);
std::string to_string(const IntPoly& p, std::string_view var);

std::string to_string(const Word& w, unsigned ngens);
std::string to_string(const CoeffElem& a);
std::string to_string(const GrElem& a);

}  // namespace stabfree
