#include "coprimality/rational.hpp"

#include <cctype>

#include "coprimality/error.hpp"

namespace coprimality {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kTableTooSmall: return "table-too-small";
    case ErrorKind::kPreconditionViolation: return "precondition-violation";
    case ErrorKind::kCapExceeded: return "cap-exceeded";
    case ErrorKind::kOverflow: return "overflow";
    case ErrorKind::kUnsolvable: return "unsolvable";
    case ErrorKind::kNonCoprimeModuli: return "non-coprime-moduli";
    case ErrorKind::kResourceLimit: return "resource-limit";
    case ErrorKind::kParse: return "parse-error";
    case ErrorKind::kInternal: return "internal-error";
  }
  return "unknown";
}

BigInt to_big(std::uint64_t value) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(value), 0, 0, &value);
  return out;
}

Rational to_rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error(ErrorKind::kInvalidArgument, "zero denominator");
  Rational out(to_big(num), to_big(den));
  out.canonicalize();
  return out;
}

Rational parse_decimal(std::string_view text) {
  std::string digits;
  bool negative = false;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::size_t fractional = 0;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      if (seen_point) ++fractional;
    } else {
      throw Error(ErrorKind::kParse, "not a decimal literal: " + std::string(text));
    }
  }
  if (digits.empty()) throw Error(ErrorKind::kParse, "not a decimal literal: " + std::string(text));
  BigInt num(digits, 10);
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, fractional);
  if (negative) num = -num;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::string to_decimal(const Rational& value, unsigned digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  BigInt num = value.get_num();
  bool negative = num < 0;
  if (negative) num = -num;
  BigInt scaled = num * scale;
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), value.get_den().get_mpz_t());
  std::string s = q.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = negative && q != 0 ? "-" : "";
  out += s.substr(0, s.size() - digits);
  if (digits > 0) {
    out += '.';
    out += s.substr(s.size() - digits);
  }
  return out;
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Rational six_over_pi_squared_truncation() {
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, 30);
  return Rational(BigInt(1), den);
}

const Rational& six_over_pi_squared() {
  static const Rational value = parse_decimal(kSixOverPiSquared);
  return value;
}

}  // namespace coprimality
