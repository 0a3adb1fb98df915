#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "coprimality/sieve.hpp"

namespace coprimality {

struct Congruence {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;
  friend bool operator==(const Congruence&, const Congruence&) = default;
};

class CongruenceSystem {
 public:
  CongruenceSystem() = default;
  // Throws kInvalidArgument on modulus 0 or residue >= modulus.
  explicit CongruenceSystem(std::vector<Congruence> constraints);

  void add(std::uint64_t residue, std::uint64_t modulus);

  std::span<const Congruence> constraints() const noexcept { return constraints_; }
  bool empty() const noexcept { return constraints_.empty(); }

 private:
  std::vector<Congruence> constraints_;
};

// Least nonnegative x satisfying every constraint; x < product of moduli.
// Moduli must be pairwise coprime: incompatible residues raise
// kUnsolvable, compatible but non-coprime moduli raise kNonCoprimeModuli.
// A product of moduli beyond 64 bits raises kOverflow.
std::uint64_t crt_solve(const CongruenceSystem& system);

using ShiftPair = std::pair<std::uint64_t, std::uint64_t>;

struct ShiftWitnessReport {
  std::vector<ShiftPair> shift_set;
  std::vector<std::uint64_t> assigned_primes;
  ShiftPair witness{0, 0};
  std::vector<std::uint64_t> certificates;  // d_i | a + a_i and d_i | b + b_i
};

// For A = {(a_i, b_i)} assigns the first m primes and solves
// a = -a_i, b = -b_i (mod p_i). A zero coordinate is lifted by the prime
// product so the witness lies in N^2.
ShiftWitnessReport shift_witness(std::span<const ShiftPair> shift_set, const PrimeTable& primes);

// True iff the report is well formed and gcd(a + a_i, b + b_i) > 1 for
// every shift, each certified by its d_i.
bool verify_shift_witness(const ShiftWitnessReport& report);

}  // namespace coprimality
