#pragma once

// JSON forms of specs and reports. Rationals and polynomials are written as
// strings; on input rationals may also be plain JSON integers.

#include <json.hpp>

#include "torofree/classify.hpp"
#include "torofree/module.hpp"
#include "torofree/verify.hpp"

namespace torofree {

using Json = nlohmann::ordered_json;

Rational rational_from_json(const Json& j);

/// Throws StructuralError / ParseError / DomainError on bad input.
ModuleSpec spec_from_json(const Json& j);
Json to_json(const ModuleSpec& spec);

Json to_json(const CheckReport& rep, bool timings);
Json to_json(const WitnessReport& rep);
Json to_json(const SimplicityVerdict& v);
Json to_json(const RecoveredParams& p);
Json to_json(const CyclicityResult& c);
Json to_json(DegreeWindow w);

}  // namespace torofree
