#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coprimality/rational.hpp"
#include "coprimality/sieve.hpp"

namespace coprimality {

inline constexpr std::uint64_t kDefaultBruteCap = 100'000'000;

// Number of coprime pairs in [n1] x [n2] by direct gcd enumeration.
// Refuses with kCapExceeded when n1 * n2 exceeds `cap`. Rows may be split
// across `workers` threads; the sum is exact so the result does not depend
// on the split.
std::uint64_t count_coprime_brute(std::uint64_t n1, std::uint64_t n2,
                                  std::uint64_t cap = kDefaultBruteCap,
                                  unsigned workers = 1);

// Same count through sum_{k <= min(n1,n2)} mu(k) floor(n1/k) floor(n2/k).
std::uint64_t count_coprime_mobius(std::uint64_t n1, std::uint64_t n2,
                                   const MobiusTable& mobius);

// Brute-force prefix table of coprime indicators over [limit] x [limit];
// answers count(n1, n2) for any n1, n2 <= limit in O(1).
class CoprimeGrid {
 public:
  explicit CoprimeGrid(std::uint32_t limit);

  std::uint32_t limit() const noexcept { return limit_; }
  std::uint64_t count(std::uint32_t n1, std::uint32_t n2) const;

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> prefix_;  // (limit+1)^2, row-major
};

// sum_{k <= m} mu(k) / k^2
Rational mobius_partial_sum(std::uint64_t m, const MobiusTable& mobius);
// H_m = sum_{k <= m} 1 / k
Rational harmonic_number(std::uint64_t m);

// Prefix tables indexed 0..m_max (entry 0 is zero).
std::vector<Rational> mobius_partial_sums(std::uint64_t m_max, const MobiusTable& mobius);
std::vector<Rational> harmonic_numbers(std::uint64_t m_max);

// (n1 + n2) * H_{min(n1,n2)} / (n1 * n2)
Rational envelope_bound(std::uint64_t n1, std::uint64_t n2, const Rational& harmonic);

// Exact check of |count/(n1 n2) - partial| <= (n1 + n2) H / (n1 n2), done
// by cross-multiplication so no rational is normalised.
bool envelope_holds(std::uint64_t n1, std::uint64_t n2, std::uint64_t count,
                    const Rational& partial, const Rational& harmonic);

struct DensityReport {
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  std::uint64_t count = 0;
  Rational ratio;
  Rational mobius_partial_sum;
  Rational error_bound;

  // |ratio - mobius_partial_sum| <= error_bound
  bool envelope_holds() const;
  // error_bound + 1/(min(n1,n2) - 1), the certified distance to 6/pi^2.
  // Only meaningful for min(n1, n2) >= 2.
  Rational limit_gap_bound() const;
};

DensityReport density(std::uint64_t n1, std::uint64_t n2, const MobiusTable& mobius);

// One report per side length n, for the square [n] x [n], in input order.
std::vector<DensityReport> density_table(std::span<const std::uint64_t> side_lengths,
                                         const MobiusTable& mobius);

}  // namespace coprimality
