#pragma once

#include <string>
#include <string_view>

#include "coprimality/measure.hpp"
#include "coprimality/sieve.hpp"

namespace coprimality {

// Parses the textual set grammar
//
//   expr     := "" | cylinder ( ("U" | "∪") cylinder )*
//   cylinder := "A{" [ group ( ";" group )* ] "}"
//   group    := prime ( "," prime )* ( "|" | "∤" | "~" )
//
// e.g. "A{2|;3∤} U A{5|}". Groups ending in "|" list divisors, groups
// ending in "∤" (or ASCII "~") list non-divisors. Primes are given by value
// and converted to ranks. Throws kParse on malformed text or non-primes.
SetExpression parse_set_expression(std::string_view text, const PrimeTable& primes);

// Inverse rendering with prime values, using "∤".
std::string format_cylinder(const CylinderSet& c, const PrimeTable& primes);
std::string format_set_expression(const SetExpression& e, const PrimeTable& primes);

}  // namespace coprimality
