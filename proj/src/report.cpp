#include "coprimality/report.hpp"

#include <sstream>

namespace coprimality {

namespace {



std::string join(const std::vector<std::uint64_t>& values, char sep) {
  std::string out;
  for (std::uint64_t v : values) {
    if (!out.empty()) out += sep;
    out += str(v);
  }
  return out;
}

Json string_array(const std::vector<std::uint64_t>& values) {
  Json out = Json::array();
  for (std::uint64_t v : values) out.push_back(str(v));
  return out;
}

void plain_lines(const Json& value, const std::string& prefix, std::ostringstream& out) {
  if (value.is_object()) {
    for (const auto& [key, item] : value.items()) {
      plain_lines(item, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (value.is_array() && !value.empty() &&
             (value.front().is_object() || value.front().is_array())) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      plain_lines(value[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else if (value.is_array()) {
    out << prefix << ":";
    for (const auto& item : value) out << ' ' << (item.is_string() ? item.get<std::string>() : item.dump());
    out << '\n';
  } else {
    out << prefix << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

}  // namespace

std::string str(std::uint64_t value) { return std::to_string(value); }

void put_rational(Json& out, const std::string& name, const Rational& value) {
  out[name + "_num"] = value.get_num().get_str();
  out[name + "_den"] = value.get_den().get_str();
  out[name + "_decimal"] = to_decimal(value, kDisplayDigits);
}

std::string render_csv(const CsvRows& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      const bool quote = row[i].find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        out += row[i];
        continue;
      }
      out += '"';
      for (char ch : row[i]) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    }
    out += '\n';
  }
  return out;
}

std::string render_plain(const Json& value) {
  std::ostringstream out;
  plain_lines(value, "", out);
  return out.str();
}

Json to_json(const DensityReport& r) {
  Json out;
  out["n1"] = str(r.n1);
  out["n2"] = str(r.n2);
  out["count"] = str(r.count);
  out["ratio_num"] = r.ratio.get_num().get_str();
  out["ratio_den"] = r.ratio.get_den().get_str();
  out["partial_sum_num"] = r.mobius_partial_sum.get_num().get_str();
  out["partial_sum_den"] = r.mobius_partial_sum.get_den().get_str();
  out["error_num"] = r.error_bound.get_num().get_str();
  out["error_den"] = r.error_bound.get_den().get_str();
  out["ratio_decimal"] = to_decimal(r.ratio, kDisplayDigits);
  out["partial_sum_decimal"] = to_decimal(r.mobius_partial_sum, kDisplayDigits);
  out["error_decimal"] = to_decimal(r.error_bound, kDisplayDigits);
  out["limit_reference"] = std::string(kSixOverPiSquared);
  out["envelope_holds"] = r.envelope_holds();
  return out;
}

CsvRows to_csv(const std::vector<DensityReport>& reports) {
  CsvRows rows{{"n1", "n2", "count", "ratio_num", "ratio_den", "partial_sum_num",
                "partial_sum_den", "error_num", "error_den"}};
  for (const DensityReport& r : reports) {
    rows.push_back({str(r.n1), str(r.n2), str(r.count), r.ratio.get_num().get_str(),
                    r.ratio.get_den().get_str(), r.mobius_partial_sum.get_num().get_str(),
                    r.mobius_partial_sum.get_den().get_str(), r.error_bound.get_num().get_str(),
                    r.error_bound.get_den().get_str()});
  }
  return rows;
}

Json to_json(const ResidueBoundReport& r) {
  Json out;
  out["t1"] = str(r.t1);
  out["t2"] = str(r.t2);
  out["r_count"] = str(r.r_count);
  put_rational(out, "ratio", r.ratio);
  out["common_primes"] = string_array(r.common_primes);
  put_rational(out, "closed_form", r.closed_form);
  return out;
}

CsvRows to_csv(const ResidueBoundReport& r) {
  return {{"t1", "t2", "r_count", "ratio_num", "ratio_den", "common_primes", "closed_form_num",
           "closed_form_den"},
          {str(r.t1), str(r.t2), str(r.r_count), r.ratio.get_num().get_str(),
           r.ratio.get_den().get_str(), join(r.common_primes, ';'),
           r.closed_form.get_num().get_str(), r.closed_form.get_den().get_str()}};
}

Json to_json(const ShiftWitnessReport& r) {
  Json out;
  Json shifts = Json::array();
  for (const auto& [a, b] : r.shift_set) shifts.push_back(Json::array({str(a), str(b)}));
  out["shift_set"] = shifts;
  out["assigned_primes"] = string_array(r.assigned_primes);
  out["witness"] = Json::array({str(r.witness.first), str(r.witness.second)});
  out["certificates"] = string_array(r.certificates);
  out["verified"] = verify_shift_witness(r);
  return out;
}

CsvRows to_csv(const ShiftWitnessReport& r) {
  CsvRows rows{{"a_i", "b_i", "prime", "certificate", "a_plus_a_i", "b_plus_b_i"}};
  for (std::size_t i = 0; i < r.shift_set.size(); ++i) {
    const auto [ai, bi] = r.shift_set[i];
    rows.push_back({str(ai), str(bi), i < r.assigned_primes.size() ? str(r.assigned_primes[i]) : "",
                    i < r.certificates.size() ? str(r.certificates[i]) : "",
                    str(r.witness.first + ai), str(r.witness.second + bi)});
  }
  return rows;
}

Json to_json(const RectWitness& w) {
  Json out;
  out["x"] = str(w.x);
  out["y"] = str(w.y);
  out["path"] = w.path == WitnessPath::kConstructive ? "constructive" : "search-fallback";
  return out;
}

Json to_json(const CylinderSet& c, const PrimeTable& primes) {
  Json out;
  Json in = Json::array(), not_in = Json::array();
  for (PrimeIndex i : c.divisible()) in.push_back(str(primes.prime(i)));
  for (PrimeIndex i : c.not_divisible()) not_in.push_back(str(primes.prime(i)));
  out["divisible_by"] = in;
  out["not_divisible_by"] = not_in;
  return out;
}

}  // namespace coprimality
