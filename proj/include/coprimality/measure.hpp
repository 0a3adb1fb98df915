#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "coprimality/rational.hpp"
#include "coprimality/sieve.hpp"

namespace coprimality {

using PrimeIndex = std::uint32_t;  // 1-based prime rank

// A_{I,J}: integers divisible by p_i for every i in I and by no p_j, j in J.
// A_{{},{}} is all of N.
class CylinderSet {
 public:
  CylinderSet() = default;
  // Throws kInvalidArgument on a zero index or when I and J intersect.
  CylinderSet(std::vector<PrimeIndex> divisible, std::vector<PrimeIndex> not_divisible);
  CylinderSet(std::initializer_list<PrimeIndex> divisible,
              std::initializer_list<PrimeIndex> not_divisible)
      : CylinderSet(std::vector<PrimeIndex>(divisible), std::vector<PrimeIndex>(not_divisible)) {}

  // Sorted, duplicate-free.
  const std::vector<PrimeIndex>& divisible() const noexcept { return divisible_; }
  const std::vector<PrimeIndex>& not_divisible() const noexcept { return not_divisible_; }

  bool is_universe() const noexcept { return divisible_.empty() && not_divisible_.empty(); }

  friend bool operator==(const CylinderSet&, const CylinderSet&) = default;
  friend auto operator<=>(const CylinderSet&, const CylinderSet&) = default;

 private:
  std::vector<PrimeIndex> divisible_;
  std::vector<PrimeIndex> not_divisible_;
};

// A finite union of cylinders. `normalized` marks pairwise-disjoint terms.
struct SetExpression {
  std::vector<CylinderSet> terms;
  bool normalized = false;

  static SetExpression empty() { return SetExpression{{}, true}; }
  static SetExpression of(CylinderSet c) { return SetExpression{{std::move(c)}, true}; }
};

inline constexpr unsigned kDefaultNormalizeCap = 24;

Rational cylinder_measure(const CylinderSet& c, const PrimeTable& primes);

SetExpression intersect(const CylinderSet& a, const CylinderSet& b);
SetExpression complement(const CylinderSet& c);

// Expands every term into full cells over T, the union of all indices
// mentioned, and dedupes. Throws kResourceLimit when |T| > cap.
SetExpression normalize(const SetExpression& e, unsigned cap = kDefaultNormalizeCap);

// Field operations on expressions. The results of intersect/complement are
// normalized; unite is a plain concatenation.
SetExpression unite(const SetExpression& a, const SetExpression& b);
SetExpression intersect(const SetExpression& a, const SetExpression& b,
                        unsigned cap = kDefaultNormalizeCap);
SetExpression complement(const SetExpression& e, unsigned cap = kDefaultNormalizeCap);

// True when no integer lies in both (decided on the common cell grid).
bool disjoint(const SetExpression& a, const SetExpression& b,
              unsigned cap = kDefaultNormalizeCap);

// Sum of cylinder measures; terms are normalized first unless the
// expression is already marked disjoint.
Rational measure(const SetExpression& e, const PrimeTable& primes,
                 unsigned cap = kDefaultNormalizeCap);

bool contains(const CylinderSet& c, std::uint64_t n, const PrimeTable& primes);
bool contains(const SetExpression& e, std::uint64_t n, const PrimeTable& primes);

// prod_{i <= prime_count} (1 - p_i^-2). Converges down to 6/pi^2.
Rational euler_product(std::size_t prime_count, const PrimeTable& primes);

// 1/p_K: bounds euler_product(K) - 6/pi^2 from above, since
// sum_{k > p} k^-2 < 1/p.
Rational euler_tail_bound(std::size_t prime_count, const PrimeTable& primes);

struct SampleEstimate {
  std::uint64_t samples = 0;
  std::uint64_t coprime_hits = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
};

// Monte Carlo over the product model restricted to the first prime_count
// primes: each sample draws, for every prime in order, a "divisible"
// indicator for x then for y, each Bernoulli(1/p). A sample is a hit when
// no prime divides both. Uses std::mt19937_64 seeded with `seed`; the draw
// order is fixed so runs are bit-reproducible.
SampleEstimate sample_coprime_estimate(std::size_t prime_count, std::uint64_t samples,
                                       std::uint64_t seed, const PrimeTable& primes);

}  // namespace coprimality
