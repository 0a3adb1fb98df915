#include "coprimality/expression_parser.hpp"

#include <cctype>
#include <charconv>

#include "coprimality/error.hpp"

namespace coprimality {

namespace {

constexpr std::string_view kNotDivides = "\xE2\x88\xA4";  // U+2224
constexpr std::string_view kUnion = "\xE2\x88\xAA";       // U+222A

class Parser {
 public:
  Parser(std::string_view text, const PrimeTable& primes) : text_(text), primes_(primes) {}

  SetExpression parse() {
    SetExpression out = SetExpression::empty();
    skip_space();
    if (at_end()) return out;
    out.normalized = false;
    out.terms.push_back(cylinder());
    while (true) {
      skip_space();
      if (at_end()) break;
      if (!eat("U") && !eat(kUnion)) fail("expected 'U' between cylinders");
      skip_space();
      out.terms.push_back(cylinder());
    }
    if (out.terms.size() == 1) out.normalized = true;
    return out;
  }

 private:
  CylinderSet cylinder() {
    if (!eat("A{")) fail("expected 'A{'");
    std::vector<PrimeIndex> divisible, not_divisible;
    skip_space();
    if (eat("}")) return CylinderSet{};
    while (true) {
      std::vector<PrimeIndex> group;
      do {
        skip_space();
        group.push_back(prime_rank());
        skip_space();
      } while (eat(","));
      if (eat("|")) {
        divisible.insert(divisible.end(), group.begin(), group.end());
      } else if (eat(kNotDivides) || eat("~")) {
        not_divisible.insert(not_divisible.end(), group.begin(), group.end());
      } else {
        fail("expected '|' or '\xE2\x88\xA4' after a prime list");
      }
      skip_space();
      if (eat("}")) break;
      if (!eat(";")) fail("expected ';' or '}'");
    }
    try {
      return CylinderSet(std::move(divisible), std::move(not_divisible));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  PrimeIndex prime_rank() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (start == pos_ || ec != std::errc{}) fail("expected a prime");
    (void)ptr;
    if (value > primes_.limit()) {
      fail(std::to_string(value) + " exceeds the prime table limit " + std::to_string(primes_.limit()));
    }
    auto rank = primes_.rank(value);
    if (!rank) fail(std::to_string(value) + " is not prime");
    return static_cast<PrimeIndex>(*rank);
  }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(std::string_view token) {
    if (text_.substr(pos_).starts_with(token)) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorKind::kParse,
                "set expression, offset " + std::to_string(pos_) + ": " + message);
  }

  std::string_view text_;
  const PrimeTable& primes_;
  std::size_t pos_ = 0;
};

std::string join(const std::vector<PrimeIndex>& ranks, const PrimeTable& primes) {
  std::string out;
  for (PrimeIndex r : ranks) {
    if (!out.empty()) out += ',';
    out += std::to_string(primes.prime(r));
  }
  return out;
}

}  // namespace

SetExpression parse_set_expression(std::string_view text, const PrimeTable& primes) {
  return Parser(text, primes).parse();
}

std::string format_cylinder(const CylinderSet& c, const PrimeTable& primes) {
  std::string out = "A{";
  if (!c.divisible().empty()) out += join(c.divisible(), primes) + "|";
  if (!c.divisible().empty() && !c.not_divisible().empty()) out += ";";
  if (!c.not_divisible().empty()) out += join(c.not_divisible(), primes) + std::string(kNotDivides);
  return out + "}";
}

std::string format_set_expression(const SetExpression& e, const PrimeTable& primes) {
  std::string out;
  for (const CylinderSet& c : e.terms) {
    if (!out.empty()) out += " U ";
    out += format_cylinder(c, primes);
  }
  return out;
}

}  // namespace coprimality
