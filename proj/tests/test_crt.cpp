#include <doctest.h>

#include <random>

#include "coprimality/crt.hpp"
#include "coprimality/error.hpp"
#include "coprimality/random.hpp"

using namespace coprimality;

namespace {

ErrorKind solve_error(std::vector<Congruence> cs) {
  try {
    crt_solve(CongruenceSystem(std::move(cs)));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInternal;
}

std::uint64_t scan_least(const CongruenceSystem& s, std::uint64_t upto) {
  for (std::uint64_t x = 0; x < upto; ++x) {
    bool ok = true;
    for (const Congruence& c : s.constraints()) ok = ok && x % c.modulus == c.residue;
    if (ok) return x;
  }
  return upto;
}

}  // namespace

TEST_CASE("crt examples") {
  CHECK(crt_solve(CongruenceSystem({{0, 2}, {1, 3}})) == 4);
  CHECK(crt_solve(CongruenceSystem({{0, 5}})) == 0);
  CHECK(crt_solve(CongruenceSystem({{1, 2}, {2, 3}, {3, 5}})) == 23);
  CHECK(crt_solve(CongruenceSystem({{0, 1}, {4, 7}})) == 4);
}

TEST_CASE("crt errors") {
  CHECK(solve_error({}) == ErrorKind::kInvalidArgument);
  CHECK(solve_error({{0, 2}, {1, 4}}) == ErrorKind::kUnsolvable);
  CHECK(solve_error({{1, 2}, {3, 4}}) == ErrorKind::kNonCoprimeModuli);
  CHECK(solve_error({{1ull << 40, (1ull << 40) + 1}, {0, (1ull << 40) + 3}}) == ErrorKind::kOverflow);
  CHECK_THROWS_AS(CongruenceSystem({{3, 3}}), Error);
  CHECK_THROWS_AS(CongruenceSystem({{0, 0}}), Error);
}

TEST_CASE("crt agrees with an exhaustive scan on random coprime systems") {
  std::mt19937_64 rng(23);
  int cases = 0;
  while (cases < 500) {
    CongruenceSystem s;
    std::uint64_t product = 1;
    bool coprime = true;
    const std::uint64_t size = uniform_int(rng, 1, 4);
    std::vector<std::uint64_t> moduli;
    for (std::uint64_t i = 0; i < size; ++i) {
      const std::uint64_t m = uniform_int(rng, 1, 40);
      for (std::uint64_t other : moduli) coprime = coprime && gcd(m, other) == 1;
      moduli.push_back(m);
      product *= m;
      s.add(uniform_int(rng, 0, m - 1), m);
    }
    if (!coprime || product > 10'000) continue;
    ++cases;
    const std::uint64_t x = crt_solve(s);
    REQUIRE(x < product);
    REQUIRE(x == scan_least(s, product));
  }
}

TEST_CASE("shift witness examples") {
  const PrimeTable primes(100);
  const ShiftPair one[] = {{1, 1}};
  const ShiftWitnessReport a = shift_witness(one, primes);
  CHECK(a.assigned_primes == std::vector<std::uint64_t>{2});
  CHECK(a.witness == ShiftPair{1, 1});
  CHECK(verify_shift_witness(a));

  const ShiftPair origin[] = {{0, 0}};
  const ShiftWitnessReport b = shift_witness(origin, primes);
  CHECK(b.witness == ShiftPair{2, 2});
  CHECK(verify_shift_witness(b));

  const ShiftPair two[] = {{1, 2}, {3, 4}};
  const ShiftWitnessReport c = shift_witness(two, primes);
  CHECK(c.assigned_primes == std::vector<std::uint64_t>{2, 3});
  // a = 1 mod 2, a = 0 mod 3; b = 0 mod 2, b = 2 mod 3.
  CHECK(c.witness == ShiftPair{3, 2});
  CHECK(gcd(3 + 1, 2 + 2) == 4);
  CHECK(gcd(3 + 3, 2 + 4) == 6);
  CHECK(verify_shift_witness(c));
}

TEST_CASE("tampered or malformed reports fail verification") {
  const PrimeTable primes(100);
  const ShiftPair one[] = {{1, 1}};
  ShiftWitnessReport r = shift_witness(one, primes);
  ShiftWitnessReport tampered = r;
  tampered.witness = {1, 2};
  CHECK_FALSE(verify_shift_witness(tampered));

  ShiftWitnessReport no_certs = r;
  no_certs.certificates.clear();
  CHECK_FALSE(verify_shift_witness(no_certs));

  ShiftWitnessReport bad_cert = r;
  bad_cert.certificates = {3};
  CHECK_FALSE(verify_shift_witness(bad_cert));

  ShiftWitnessReport empty;
  CHECK_FALSE(verify_shift_witness(empty));
}

TEST_CASE("shift witness errors") {
  const PrimeTable primes(10);  // 4 primes
  std::vector<ShiftPair> five(5, ShiftPair{1, 1});
  try {
    shift_witness(five, primes);
    FAIL("expected table-too-small");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kTableTooSmall);
  }
  CHECK_THROWS_AS(shift_witness(std::vector<ShiftPair>{}, primes), Error);
}

TEST_CASE("random shift sets yield verified, minimal witnesses") {
  const PrimeTable primes(100);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<ShiftPair> shifts(uniform_int(rng, 1, 8));
    for (auto& [a, b] : shifts) {
      a = uniform_int(rng, 0, 100);
      b = uniform_int(rng, 0, 100);
    }
    const ShiftWitnessReport r = shift_witness(shifts, primes);
    REQUIRE(verify_shift_witness(r));
    std::uint64_t product = 1;
    for (std::uint64_t p : r.assigned_primes) product *= p;
    REQUIRE(r.witness.first >= 1);
    REQUIRE(r.witness.first <= product);
    REQUIRE(r.witness.second >= 1);
    REQUIRE(r.witness.second <= product);
    if (product <= 30030) {
      // No smaller positive point satisfies every congruence.
      for (std::uint64_t a = 1; a < r.witness.first; ++a) {
        bool all = true;
        for (std::size_t i = 0; i < shifts.size(); ++i) {
          all = all && (a + shifts[i].first) % r.assigned_primes[i] == 0;
        }
        REQUIRE_FALSE(all);
      }
    }
  }
}
