#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "coprimality/rational.hpp"
#include "coprimality/sieve.hpp"

namespace coprimality {

using IntPair = std::pair<std::uint64_t, std::uint64_t>;

// The product residue class {x = j1 mod k1} x {y = j2 mod k2}. Residues are
// stored reduced, 0 <= j < k.
class ResidueRect {
 public:
  // Throws kInvalidArgument for a zero modulus; reduces residues.
  ResidueRect(std::uint64_t j1, std::uint64_t k1, std::uint64_t j2, std::uint64_t k2);

  std::uint64_t j1() const noexcept { return j1_; }
  std::uint64_t k1() const noexcept { return k1_; }
  std::uint64_t j2() const noexcept { return j2_; }
  std::uint64_t k2() const noexcept { return k2_; }

  bool contains(std::uint64_t x, std::uint64_t y) const noexcept {
    return x % k1_ == j1_ && y % k2_ == j2_;
  }

  friend bool operator==(const ResidueRect&, const ResidueRect&) = default;

 private:
  std::uint64_t j1_, k1_, j2_, k2_;
};

// True iff gcd(j1, j2, k1, k2) = 1, i.e. the rectangle meets the coprime
// pairs. gcd is invariant under j -> j + k so the 0-based storage is fine.
bool rect_nonempty_criterion(const ResidueRect& rect);

// Smallest coprime (x, y) in the rectangle with x, y >= 1, ordered by
// (x + y, x), searching x, y <= cap * k1 * k2.
std::optional<IntPair> rect_coprime_search(const ResidueRect& rect, std::uint64_t cap);

// Returns a >= 0 with gcd(a x + y, n) = 1, given gcd(x, y) = 1.
//
// Each prime p | n gets a congruence: a = 0 mod p when p | x or when p
// divides neither x nor y, a = 1 mod p when p | y. The least nonnegative
// CRT solution is returned after checking the gcd.
std::uint64_t lemma_shift_witness(std::uint64_t x, std::uint64_t y, std::uint64_t n,
                                  const PrimeTable& primes);

enum class WitnessPath { kConstructive, kSearchFallback };

struct RectWitness {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  WitnessPath path = WitnessPath::kConstructive;
};

inline constexpr std::uint64_t kConstructFallbackCap = 64;

// Builds (a1 k1 + j1, a2 k2 + j2) coprime, with residues lifted 0 -> k.
// Writing p_i = gcd(k_i, j_i), k_i = p_i r_i, j_i = p_i s_i: a1 comes from
// lemma_shift_witness(r1, s1, p2), then a2 from
// lemma_shift_witness(r2, s2, p1 (a1 r1 + s1)).
//
// Throws kPreconditionViolation when the criterion fails. The result is
// gcd-verified; if the recipe ever produced a bad pair the bounded search
// (cap kConstructFallbackCap) is used instead and the path records it.
RectWitness construct_coprime_in_rect(const ResidueRect& rect, const PrimeTable& primes);

struct ResidueBoundReport {
  std::uint64_t t1 = 0;
  std::uint64_t t2 = 0;
  std::uint64_t r_count = 0;
  Rational ratio;
  std::vector<std::uint64_t> common_primes;
  Rational closed_form;  // prod over common primes of (1 - p^-2)
};

// Counts residue pairs (j1, j2) in [0,t1) x [0,t2) meeting G by direct
// enumeration of the criterion; the closed form is computed separately.
// Throws kInternal if the two disagree.
ResidueBoundReport r_count(std::uint64_t t1, std::uint64_t t2, const PrimeTable& primes);

// prod_{i <= prime_count} (1 - p_i^-2)
Rational residue_upper_bound(std::size_t prime_count, const PrimeTable& primes);

}  // namespace coprimality
