#pragma once

#include <json.hpp>

#include "stabfree/construct.hpp"
#include "stabfree/parse.hpp"

namespace stabfree {

using nlohmann::json;

// Certificates are self-contained: they embed the ring presentations needed
// to re-check them, so verification needs no other context.

json ring_to_json(const CoeffRingPtr& ring);
CoeffRingPtr ring_from_json(const json& j);

json square_to_json(const MilnorSquare& sq);
MilnorSquare square_from_json(const json& j);  // validates; throws SquareError

json grelem_to_json(const GrElem& a);  // list of {word, coeff} records
GrElem grelem_from_json(const GroupRing& ring, const json& j);

json factorlist_to_json(const FactorList& fl);
FactorList factorlist_from_json(const json& j, const GroupRing& ring);

json trivialization_to_json(const TrivializationCert& cert);
TrivializationCert trivialization_from_json(const json& j);

json verdict_to_json(const DistinctnessVerdict& v, unsigned m);

}  // namespace stabfree
