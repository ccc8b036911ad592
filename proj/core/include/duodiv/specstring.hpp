#pragma once

//! Text form of catalog members, as accepted and produced by the CLI:
//!   poisson:lambda=1  geometric:p=0.5  exponential:lambda=2
//!   laplacian:lambda=1  halfnormal:sigma=1  normal:m=0,s=1
//!   truncnormal:m=0,s=1,a=-inf,b=inf
//! Numbers are decimal with optional scientific notation; "inf"/"-inf" are
//! accepted for truncation bounds. Formatting emits the shortest decimal
//! string that parses back to the identical double, so
//! parse -> format -> parse is the identity.

#include <string>

#include "duodiv/families.hpp"

namespace duodiv {

struct FamilySpec {
  FamilyId family;
  SourceParams params;
};

//! Parse "family:key=value,...". Throws ParamError on grammar violations,
//! unknown family names, duplicate/unknown keys, or unparseable numbers.
FamilySpec parse_family_spec(const std::string& text);

//! Parse and materialize in one step (factory validation applies).
ExpFamilyMember member_from_spec(const std::string& text);

//! Canonical text form, keys in the documented order.
std::string format_family_spec(FamilyId id, const SourceParams& params);
std::string format_family_spec(const ExpFamilyMember& member);

//! Shortest round-trip decimal form of v ("inf"/"-inf" for infinities).
std::string format_double(double v);

//! Strict double parse of the whole token; accepts inf/-inf. Throws
//! ParamError on anything else (including NaN).
double parse_double(const std::string& token);

}  // namespace duodiv
