#include "coprimality/counting.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <thread>

#include "coprimality/error.hpp"

namespace coprimality {

namespace {

void require_positive(std::uint64_t n1, std::uint64_t n2) {
  if (n1 == 0 || n2 == 0) {
    throw Error(ErrorKind::kInvalidArgument, "side lengths must be positive");
  }
}

std::uint64_t count_rows(std::uint64_t first, std::uint64_t last, std::uint64_t n2) {
  std::uint64_t total = 0;
  for (std::uint64_t a = first; a <= last; ++a) {
    for (std::uint64_t b = 1; b <= n2; ++b) total += gcd(a, b) == 1;
  }
  return total;
}

// lcm(1..m) as a product of maximal prime powers.
BigInt lcm_up_to(std::uint64_t m) {
  BigInt out = 1;
  if (m < 2) return out;
  const PrimeTable primes(m);
  for (std::uint64_t p : primes.primes()) {
    std::uint64_t power = p;
    while (power <= m / p) power *= p;
    out *= to_big(power);
  }
  return out;
}

void add_multiple_of_quotient(BigInt& acc, const BigInt& dividend, std::uint64_t divisor,
                              int sign, BigInt& scratch) {
  mpz_divexact_ui(scratch.get_mpz_t(), dividend.get_mpz_t(), divisor);
  if (sign > 0) {
    acc += scratch;
  } else {
    acc -= scratch;
  }
}

}  // namespace

std::uint64_t count_coprime_brute(std::uint64_t n1, std::uint64_t n2, std::uint64_t cap,
                                  unsigned workers) {
  require_positive(n1, n2);
  unsigned __int128 pairs = static_cast<unsigned __int128>(n1) * n2;
  if (pairs > cap) {
    throw Error(ErrorKind::kCapExceeded,
                "brute-force enumeration of " + std::to_string(n1) + " x " + std::to_string(n2) +
                    " pairs exceeds the cap of " + std::to_string(cap) +
                    " pair evaluations; use the Mobius method or raise --brute-cap");
  }
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(n1, 64))));
  if (workers == 1) return count_rows(1, n1, n2);

  std::vector<std::uint64_t> partial(workers, 0);
  {
    std::vector<std::jthread> threads;
    std::uint64_t chunk = (n1 + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      std::uint64_t first = w * chunk + 1;
      std::uint64_t last = std::min(n1, first + chunk - 1);
      if (first > last) break;
      threads.emplace_back([&partial, w, first, last, n2] { partial[w] = count_rows(first, last, n2); });
    }
  }
  std::uint64_t total = 0;
  for (std::uint64_t v : partial) total += v;
  return total;
}

std::uint64_t count_coprime_mobius(std::uint64_t n1, std::uint64_t n2, const MobiusTable& mobius) {
  require_positive(n1, n2);
  const std::uint64_t m = std::min(n1, n2);
  if (mobius.limit() < m) {
    throw Error(ErrorKind::kInvalidArgument,
                "mobius table limit " + std::to_string(mobius.limit()) +
                    " is below min(n1, n2) = " + std::to_string(m));
  }
  __int128 sum = 0;
  for (std::uint64_t k = 1; k <= m; ++k) {
    int mu = mobius[k];
    if (mu == 0) continue;
    unsigned __int128 term = static_cast<unsigned __int128>(n1 / k) * (n2 / k);
    if (term > static_cast<unsigned __int128>(std::numeric_limits<__int128>::max()) ||
        __builtin_add_overflow(sum, mu * static_cast<__int128>(term), &sum)) {
      throw Error(ErrorKind::kOverflow, "coprime count accumulation overflowed 128 bits");
    }
  }
  if (sum < 0 || sum > static_cast<__int128>(std::numeric_limits<std::uint64_t>::max())) {
    throw Error(ErrorKind::kOverflow, "coprime count does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(sum);
}

CoprimeGrid::CoprimeGrid(std::uint32_t limit) : limit_(limit) {
  const std::size_t side = static_cast<std::size_t>(limit) + 1;
  prefix_.assign(side * side, 0);
  for (std::size_t a = 1; a < side; ++a) {
    std::uint32_t row = 0;
    for (std::size_t b = 1; b < side; ++b) {
      row += gcd(a, b) == 1;
      prefix_[a * side + b] = prefix_[(a - 1) * side + b] + row;
    }
  }
}

std::uint64_t CoprimeGrid::count(std::uint32_t n1, std::uint32_t n2) const {
  if (n1 > limit_ || n2 > limit_) {
    throw Error(ErrorKind::kInvalidArgument, "grid query outside " + std::to_string(limit_));
  }
  return prefix_[static_cast<std::size_t>(n1) * (limit_ + 1) + n2];
}

Rational mobius_partial_sum(std::uint64_t m, const MobiusTable& mobius) {
  if (mobius.limit() < m) {
    throw Error(ErrorKind::kInvalidArgument,
                "mobius table limit " + std::to_string(mobius.limit()) + " is below " +
                    std::to_string(m));
  }
  // Common denominator lcm(1..m)^2, one exact division per squarefree k.
  const BigInt lcm = lcm_up_to(m);
  const BigInt den = lcm * lcm;
  BigInt num = 0;
  BigInt scratch;
  for (std::uint64_t k = 1; k <= m; ++k) {
    int mu = mobius[k];
    if (mu == 0) continue;
    if (k <= 0xFFFFFFFFull) {
      add_multiple_of_quotient(num, den, k * k, mu, scratch);
    } else {
      BigInt kk = to_big(k);
      kk *= kk;
      mpz_divexact(scratch.get_mpz_t(), den.get_mpz_t(), kk.get_mpz_t());
      if (mu > 0) num += scratch;
      else num -= scratch;
    }
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational harmonic_number(std::uint64_t m) {
  const BigInt den = lcm_up_to(m);
  BigInt num = 0;
  BigInt scratch;
  for (std::uint64_t k = 1; k <= m; ++k) add_multiple_of_quotient(num, den, k, 1, scratch);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::vector<Rational> mobius_partial_sums(std::uint64_t m_max, const MobiusTable& mobius) {
  if (mobius.limit() < m_max) {
    throw Error(ErrorKind::kInvalidArgument, "mobius table too small for prefix sums");
  }
  std::vector<Rational> out(m_max + 1);
  for (std::uint64_t k = 1; k <= m_max; ++k) {
    out[k] = out[k - 1];
    if (int mu = mobius[k]; mu != 0) {
      Rational term(mu, 1);
      term /= Rational(to_big(k) * to_big(k));
      out[k] += term;
    }
  }
  return out;
}

std::vector<Rational> harmonic_numbers(std::uint64_t m_max) {
  std::vector<Rational> out(m_max + 1);
  for (std::uint64_t k = 1; k <= m_max; ++k) out[k] = out[k - 1] + Rational(BigInt(1), to_big(k));
  return out;
}

Rational envelope_bound(std::uint64_t n1, std::uint64_t n2, const Rational& harmonic) {
  require_positive(n1, n2);
  Rational out = harmonic * Rational(to_big(n1) + to_big(n2));
  out /= Rational(to_big(n1) * to_big(n2));
  return out;
}

bool envelope_holds(std::uint64_t n1, std::uint64_t n2, std::uint64_t count,
                    const Rational& partial, const Rational& harmonic) {
  // |count * pden - n1 n2 pnum| * hden <= (n1 + n2) hnum * pden
  const BigInt area = to_big(n1) * to_big(n2);
  BigInt lhs = to_big(count) * partial.get_den() - area * partial.get_num();
  lhs = ::abs(lhs) * harmonic.get_den();
  const BigInt rhs = (to_big(n1) + to_big(n2)) * harmonic.get_num() * partial.get_den();
  return lhs <= rhs;
}

bool DensityReport::envelope_holds() const {
  return abs(ratio - mobius_partial_sum) <= error_bound;
}

Rational DensityReport::limit_gap_bound() const {
  const std::uint64_t m = std::min(n1, n2);
  if (m < 2) throw Error(ErrorKind::kInvalidArgument, "limit gap bound needs min(n1, n2) >= 2");
  return error_bound + Rational(BigInt(1), to_big(m - 1));
}

DensityReport density(std::uint64_t n1, std::uint64_t n2, const MobiusTable& mobius) {
  DensityReport report;
  report.n1 = n1;
  report.n2 = n2;
  report.count = count_coprime_mobius(n1, n2, mobius);
  const std::uint64_t m = std::min(n1, n2);
  report.ratio = Rational(to_big(report.count), to_big(n1) * to_big(n2));
  report.ratio.canonicalize();
  report.mobius_partial_sum = mobius_partial_sum(m, mobius);
  report.error_bound = envelope_bound(n1, n2, harmonic_number(m));
  return report;
}

std::vector<DensityReport> density_table(std::span<const std::uint64_t> side_lengths,
                                         const MobiusTable& mobius) {
  std::vector<DensityReport> out;
  out.reserve(side_lengths.size());
  for (std::uint64_t n : side_lengths) {
    try {
      out.push_back(density(n, n, mobius));
    } catch (const Error& e) {
      throw Error(e.kind(), "density table row n=" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace coprimality
