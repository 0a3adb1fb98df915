#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace coprimality {

// All primes up to `limit`, ranked from 1 (p_1 = 2, p_2 = 3, ...).
// Immutable after construction and safe to share across threads.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::size_t size() const noexcept { return primes_.size(); }
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }

  // 1-based; throws kTableTooSmall past the end of the table.
  std::uint64_t prime(std::size_t rank) const;

  // Rank of `p`, or nullopt when `p` is not a prime within the table.
  std::optional<std::size_t> rank(std::uint64_t p) const noexcept;

  bool is_prime(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

// Moebius function on 1..limit.
class MobiusTable {
 public:
  explicit MobiusTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }

  // Valid for 1 <= k <= limit.
  int operator[](std::uint64_t k) const noexcept { return values_[k]; }
  int at(std::uint64_t k) const;

 private:
  std::uint64_t limit_;
  std::vector<std::int8_t> values_;  // index 0 unused
};

PrimeTable build_prime_table(std::uint64_t limit);
MobiusTable build_mobius_table(std::uint64_t limit);

// gcd(0, b) = b, gcd(0, 0) = 0.
std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

// Distinct prime divisors of n in ascending order.
//
// Trial division uses the table primes; a cofactor left over once the
// table is exhausted is accepted as prime when it is below (limit + 1)^2,
// since any composite cofactor would have a divisor within the table.
// Otherwise throws kTableTooSmall naming the cofactor.
std::vector<std::uint64_t> prime_factors(std::uint64_t n, const PrimeTable& table);

}  // namespace coprimality
