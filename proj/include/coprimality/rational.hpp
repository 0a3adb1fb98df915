#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace coprimality {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt to_big(std::uint64_t value);
Rational to_rational(std::uint64_t num, std::uint64_t den = 1);

// Parses a plain decimal literal such as "0.6079" or "-12.5" exactly.
Rational parse_decimal(std::string_view text);

// Renders `value` with `digits` fractional digits, truncated toward zero.
std::string to_decimal(const Rational& value, unsigned digits = 20);

Rational abs(const Rational& value);

/// 6/pi^2 = 1/zeta(2), stored to 30 decimal places (truncated, so the
/// stored value is a strict lower bound of the true constant). Exact
/// contexts always use this string; it is never recomputed from a
/// floating-point pi.
inline constexpr std::string_view kSixOverPiSquared =
    "0.607927101854026628663276779258";

// Upper bound on |kSixOverPiSquared - 6/pi^2|.
Rational six_over_pi_squared_truncation();

const Rational& six_over_pi_squared();

}  // namespace coprimality
