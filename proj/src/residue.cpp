#include "coprimality/residue.hpp"

#include <string>

#include "coprimality/crt.hpp"
#include "coprimality/error.hpp"

namespace coprimality {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::kOverflow, "rectangle witness exceeds 64 bits");
  }
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorKind::kOverflow, "rectangle witness exceeds 64 bits");
  }
  return out;
}

// (a x + y) mod n without overflow.
std::uint64_t affine_mod(std::uint64_t a, std::uint64_t x, std::uint64_t y, std::uint64_t n) {
  unsigned __int128 v = static_cast<unsigned __int128>(a) * x + y;
  return static_cast<std::uint64_t>(v % n);
}

}  // namespace

ResidueRect::ResidueRect(std::uint64_t j1, std::uint64_t k1, std::uint64_t j2, std::uint64_t k2)
    : k1_(k1), k2_(k2) {
  if (k1 == 0 || k2 == 0) throw Error(ErrorKind::kInvalidArgument, "moduli must be positive");
  j1_ = j1 % k1;
  j2_ = j2 % k2;
}

bool rect_nonempty_criterion(const ResidueRect& rect) {
  return gcd(gcd(rect.j1(), rect.j2()), gcd(rect.k1(), rect.k2())) == 1;
}

std::optional<IntPair> rect_coprime_search(const ResidueRect& rect, std::uint64_t cap) {
  if (cap == 0) throw Error(ErrorKind::kInvalidArgument, "search cap must be positive");
  const std::uint64_t bound = checked_mul(checked_mul(cap, rect.k1()), rect.k2());
  const std::uint64_t x0 = rect.j1() == 0 ? rect.k1() : rect.j1();
  const std::uint64_t y0 = rect.j2() == 0 ? rect.k2() : rect.j2();

  std::optional<IntPair> best;
  std::uint64_t best_sum = 0;
  for (std::uint64_t x = x0; x <= bound; x += rect.k1()) {
    if (best && x + y0 >= best_sum) break;
    for (std::uint64_t y = y0; y <= bound; y += rect.k2()) {
      if (best && x + y >= best_sum) break;
      if (gcd(x, y) == 1) {
        best = IntPair{x, y};
        best_sum = x + y;
        break;
      }
    }
  }
  return best;
}

std::uint64_t lemma_shift_witness(std::uint64_t x, std::uint64_t y, std::uint64_t n,
                                  const PrimeTable& primes) {
  if (x == 0 || y == 0 || n == 0) {
    throw Error(ErrorKind::kInvalidArgument, "lemma_shift_witness needs positive x, y, n");
  }
  if (gcd(x, y) != 1) {
    throw Error(ErrorKind::kPreconditionViolation,
                "gcd(" + std::to_string(x) + ", " + std::to_string(y) + ") != 1");
  }
  CongruenceSystem system;
  for (std::uint64_t p : prime_factors(n, primes)) {
    // p | x: a x + y = y. p | y: a = 1 gives x. Neither: a = 0 gives y.
    system.add(y % p == 0 ? 1 % p : 0, p);
  }
  const std::uint64_t a = system.empty() ? 0 : crt_solve(system);
  if (gcd(affine_mod(a, x, y, n), n) != 1) {
    throw Error(ErrorKind::kInternal, "shift witness a=" + std::to_string(a) +
                                          " fails gcd(a x + y, n) = 1 for x=" + std::to_string(x) +
                                          ", y=" + std::to_string(y) + ", n=" + std::to_string(n));
  }
  return a;
}

RectWitness construct_coprime_in_rect(const ResidueRect& rect, const PrimeTable& primes) {
  if (!rect_nonempty_criterion(rect)) {
    throw Error(ErrorKind::kPreconditionViolation,
                "gcd(j1, j2, k1, k2) != 1: the rectangle holds no coprime pair");
  }
  const std::uint64_t k1 = rect.k1(), k2 = rect.k2();
  const std::uint64_t j1 = rect.j1() == 0 ? k1 : rect.j1();
  const std::uint64_t j2 = rect.j2() == 0 ? k2 : rect.j2();

  RectWitness out;
  try {
    const std::uint64_t p1 = gcd(k1, j1), p2 = gcd(k2, j2);
    const std::uint64_t r1 = k1 / p1, s1 = j1 / p1;
    const std::uint64_t r2 = k2 / p2, s2 = j2 / p2;
    const std::uint64_t a1 = lemma_shift_witness(r1, s1, p2, primes);
    out.x = checked_add(checked_mul(a1, k1), j1);  // = p1 (a1 r1 + s1)
    const std::uint64_t a2 = lemma_shift_witness(r2, s2, out.x, primes);
    out.y = checked_add(checked_mul(a2, k2), j2);
    if (rect.contains(out.x, out.y) && gcd(out.x, out.y) == 1) return out;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kInternal) throw;
  }

  auto found = rect_coprime_search(rect, kConstructFallbackCap);
  if (!found) {
    throw Error(ErrorKind::kInternal, "no coprime pair found in a rectangle the criterion accepts");
  }
  return RectWitness{found->first, found->second, WitnessPath::kSearchFallback};
}

ResidueBoundReport r_count(std::uint64_t t1, std::uint64_t t2, const PrimeTable& primes) {
  if (t1 == 0 || t2 == 0) throw Error(ErrorKind::kInvalidArgument, "moduli must be positive");
  ResidueBoundReport report;
  report.t1 = t1;
  report.t2 = t2;
  const std::uint64_t g = gcd(t1, t2);
  for (std::uint64_t j1 = 0; j1 < t1; ++j1) {
    const std::uint64_t g1 = gcd(j1, g);
    for (std::uint64_t j2 = 0; j2 < t2; ++j2) report.r_count += gcd(g1, j2) == 1;
  }
  report.ratio = Rational(to_big(report.r_count), to_big(t1) * to_big(t2));
  report.ratio.canonicalize();

  report.common_primes = prime_factors(g, primes);
  report.closed_form = 1;
  for (std::uint64_t p : report.common_primes) {
    const BigInt pp = to_big(p) * to_big(p);
    report.closed_form *= Rational(pp - 1, pp);
  }
  report.closed_form.canonicalize();
  if (report.ratio != report.closed_form) {
    throw Error(ErrorKind::kInternal, "r_count ratio disagrees with the common-prime product");
  }
  return report;
}

Rational residue_upper_bound(std::size_t prime_count, const PrimeTable& primes) {
  if (prime_count == 0) throw Error(ErrorKind::kInvalidArgument, "prime_count must be positive");
  BigInt num = 1, den = 1;
  for (std::size_t i = 1; i <= prime_count; ++i) {
    const BigInt pp = to_big(primes.prime(i)) * to_big(primes.prime(i));
    num *= pp - 1;
    den *= pp;
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace coprimality
