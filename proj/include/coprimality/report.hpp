#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "coprimality/counting.hpp"
#include "coprimality/crt.hpp"
#include "coprimality/measure.hpp"
#include "coprimality/residue.hpp"

namespace coprimality {

using Json = nlohmann::ordered_json;

// Exact values travel as decimal strings: integers as "123", rationals as
// a "<name>_num"/"<name>_den" pair plus a display-only "<name>_decimal".
inline constexpr unsigned kDisplayDigits = 20;

std::string str(std::uint64_t value);
void put_rational(Json& out, const std::string& name, const Rational& value);

// Rows for CSV output; the first row is the header.
using CsvRows = std::vector<std::vector<std::string>>;
std::string render_csv(const CsvRows& rows);

// "key: value" lines from a flat-or-nested JSON object.
std::string render_plain(const Json& value);

Json to_json(const DensityReport& report);
CsvRows to_csv(const std::vector<DensityReport>& reports);

Json to_json(const ResidueBoundReport& report);
CsvRows to_csv(const ResidueBoundReport& report);

Json to_json(const ShiftWitnessReport& report);
CsvRows to_csv(const ShiftWitnessReport& report);

Json to_json(const RectWitness& witness);
Json to_json(const CylinderSet& c, const PrimeTable& primes);

}  // namespace coprimality
