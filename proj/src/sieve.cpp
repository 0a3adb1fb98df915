#include "coprimality/sieve.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "coprimality/error.hpp"

namespace coprimality {

namespace {

// Linear sieve: every composite is struck exactly once by its least prime
// factor, which also yields mu in the same pass.
struct LinearSieve {
  std::vector<std::uint64_t> primes;
  std::vector<std::int8_t> mobius;

  LinearSieve(std::uint64_t limit, bool want_mobius) {
    std::vector<bool> composite(limit + 1, false);
    if (want_mobius) {
      mobius.assign(limit + 1, 0);
      if (limit >= 1) mobius[1] = 1;
    }
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (!composite[i]) {
        primes.push_back(i);
        if (want_mobius) mobius[i] = -1;
      }
      for (std::uint64_t p : primes) {
        if (p * i > limit) break;
        composite[p * i] = true;
        if (i % p == 0) {
          if (want_mobius) mobius[p * i] = 0;
          break;
        }
        if (want_mobius) mobius[p * i] = static_cast<std::int8_t>(-mobius[i]);
      }
    }
  }
};

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "prime table limit must be at least 2, got " + std::to_string(limit));
  }
  primes_ = LinearSieve(limit, false).primes;
}

std::uint64_t PrimeTable::prime(std::size_t rank) const {
  if (rank == 0 || rank > primes_.size()) {
    throw Error(ErrorKind::kTableTooSmall,
                "prime rank " + std::to_string(rank) + " outside table of " +
                    std::to_string(primes_.size()) + " primes (limit " +
                    std::to_string(limit_) + ")");
  }
  return primes_[rank - 1];
}

std::optional<std::size_t> PrimeTable::rank(std::uint64_t p) const noexcept {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - primes_.begin()) + 1;
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_) {
    throw Error(ErrorKind::kTableTooSmall,
                std::to_string(n) + " exceeds prime table limit " + std::to_string(limit_));
  }
  return rank(n).has_value();
}

MobiusTable::MobiusTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 1) throw Error(ErrorKind::kInvalidArgument, "mobius table limit must be at least 1");
  values_ = LinearSieve(limit, true).mobius;
}

int MobiusTable::at(std::uint64_t k) const {
  if (k == 0 || k > limit_) {
    throw Error(ErrorKind::kTableTooSmall,
                "mobius index " + std::to_string(k) + " outside 1.." + std::to_string(limit_));
  }
  return values_[k];
}

PrimeTable build_prime_table(std::uint64_t limit) { return PrimeTable(limit); }
MobiusTable build_mobius_table(std::uint64_t limit) { return MobiusTable(limit); }

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  int shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  do {
    b >>= std::countr_zero(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "prime_factors requires n >= 1");
  std::vector<std::uint64_t> out;
  std::uint64_t rest = n;
  bool exhausted = true;
  for (std::uint64_t p : table.primes()) {
    if (static_cast<unsigned __int128>(p) * p > rest) {
      exhausted = false;
      break;
    }
    if (rest % p == 0) {
      out.push_back(p);
      do rest /= p;
      while (rest % p == 0);
    }
  }
  if (rest == 1) return out;
  if (exhausted) {
    unsigned __int128 bound = static_cast<unsigned __int128>(table.limit()) + 1;
    if (static_cast<unsigned __int128>(rest) >= bound * bound) {
      throw Error(ErrorKind::kTableTooSmall,
                  "cannot factor " + std::to_string(n) + ": cofactor " + std::to_string(rest) +
                      " has no prime factor <= " + std::to_string(table.limit()) +
                      " and is too large to certify as prime");
    }
  }
  out.push_back(rest);
  return out;
}

}  // namespace coprimality
