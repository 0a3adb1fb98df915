#include "coprimality/crt.hpp"

#include <limits>
#include <string>

#include "coprimality/error.hpp"

namespace coprimality {

namespace {

std::string describe(const Congruence& c) {
  return std::to_string(c.residue) + " mod " + std::to_string(c.modulus);
}

// Inverse of a modulo m for gcd(a, m) = 1, m >= 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  __int128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

std::uint64_t negate_mod(std::uint64_t value, std::uint64_t p) { return (p - value % p) % p; }

}  // namespace

CongruenceSystem::CongruenceSystem(std::vector<Congruence> constraints) {
  for (const Congruence& c : constraints) add(c.residue, c.modulus);
}

void CongruenceSystem::add(std::uint64_t residue, std::uint64_t modulus) {
  if (modulus == 0) throw Error(ErrorKind::kInvalidArgument, "modulus must be positive");
  if (residue >= modulus) {
    throw Error(ErrorKind::kInvalidArgument,
                "residue " + std::to_string(residue) + " is not reduced modulo " +
                    std::to_string(modulus));
  }
  constraints_.push_back({residue, modulus});
}

std::uint64_t crt_solve(const CongruenceSystem& system) {
  auto cs = system.constraints();
  if (cs.empty()) throw Error(ErrorKind::kInvalidArgument, "congruence system is empty");

  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      std::uint64_t g = gcd(cs[i].modulus, cs[j].modulus);
      if (g == 1) continue;
      if (cs[i].residue % g != cs[j].residue % g) {
        throw Error(ErrorKind::kUnsolvable, "incompatible congruences " + describe(cs[i]) +
                                                " and " + describe(cs[j]));
      }
      throw Error(ErrorKind::kNonCoprimeModuli,
                  "moduli of " + describe(cs[i]) + " and " + describe(cs[j]) +
                      " share the factor " + std::to_string(g) +
                      "; reduce the system to pairwise coprime moduli first");
    }
  }

  std::uint64_t x = 0;
  std::uint64_t product = 1;
  for (const Congruence& c : cs) {
    std::uint64_t next_product;
    if (__builtin_mul_overflow(product, c.modulus, &next_product)) {
      throw Error(ErrorKind::kOverflow, "product of moduli exceeds 64 bits");
    }
    // x + product * t = residue (mod modulus)
    std::uint64_t diff = (c.residue + c.modulus - x % c.modulus) % c.modulus;
    unsigned __int128 t =
        static_cast<unsigned __int128>(diff) * inverse_mod(product % c.modulus, c.modulus) % c.modulus;
    x = static_cast<std::uint64_t>(x + product * t);
    product = next_product;
  }
  return x;
}

ShiftWitnessReport shift_witness(std::span<const ShiftPair> shift_set, const PrimeTable& primes) {
  if (shift_set.empty()) throw Error(ErrorKind::kInvalidArgument, "shift set must be nonempty");
  if (shift_set.size() > primes.size()) {
    throw Error(ErrorKind::kTableTooSmall,
                "need " + std::to_string(shift_set.size()) + " primes but the table holds " +
                    std::to_string(primes.size()));
  }
  ShiftWitnessReport report;
  report.shift_set.assign(shift_set.begin(), shift_set.end());
  CongruenceSystem for_a, for_b;
  std::uint64_t product = 1;
  for (std::size_t i = 0; i < shift_set.size(); ++i) {
    const std::uint64_t p = primes.prime(i + 1);
    report.assigned_primes.push_back(p);
    for_a.add(negate_mod(shift_set[i].first, p), p);
    for_b.add(negate_mod(shift_set[i].second, p), p);
    if (__builtin_mul_overflow(product, p, &product)) {
      throw Error(ErrorKind::kOverflow, "prime product exceeds 64 bits");
    }
  }
  std::uint64_t a = crt_solve(for_a);
  std::uint64_t b = crt_solve(for_b);
  if (a == 0) a = product;
  if (b == 0) b = product;
  report.witness = {a, b};
  report.certificates = report.assigned_primes;
  if (!verify_shift_witness(report)) {
    throw Error(ErrorKind::kInternal, "constructed shift witness failed verification");
  }
  return report;
}

bool verify_shift_witness(const ShiftWitnessReport& report) {
  if (report.shift_set.empty()) return false;
  if (report.certificates.size() != report.shift_set.size()) return false;
  const auto [a, b] = report.witness;
  if (a == 0 || b == 0) return false;
  for (std::size_t i = 0; i < report.shift_set.size(); ++i) {
    const auto [ai, bi] = report.shift_set[i];
    std::uint64_t x, y;
    if (__builtin_add_overflow(a, ai, &x) || __builtin_add_overflow(b, bi, &y)) return false;
    if (gcd(x, y) <= 1) return false;
    const std::uint64_t d = report.certificates[i];
    if (d <= 1 || x % d != 0 || y % d != 0) return false;
  }
  return true;
}

}  // namespace coprimality
