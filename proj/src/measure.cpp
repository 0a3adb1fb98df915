#include "coprimality/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "coprimality/error.hpp"

namespace coprimality {

namespace {

using Mask = std::uint32_t;

void sort_unique(std::vector<PrimeIndex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<PrimeIndex> merged(const std::vector<PrimeIndex>& a, const std::vector<PrimeIndex>& b) {
  std::vector<PrimeIndex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Membership table over the full cells of a coordinate set T: bit t of a
// cell mask set means "divisible by p_{T[t]}".
struct CellGrid {
  std::vector<PrimeIndex> coords;
  std::vector<std::uint8_t> marked;

  CellGrid(std::vector<PrimeIndex> t, unsigned cap) : coords(std::move(t)) {
    if (coords.size() > cap) {
      throw Error(ErrorKind::kResourceLimit,
                  "normalization over " + std::to_string(coords.size()) +
                      " prime coordinates exceeds the cap of " + std::to_string(cap));
    }
    marked.assign(std::size_t{1} << coords.size(), 0);
  }

  Mask full() const { return static_cast<Mask>((std::size_t{1} << coords.size()) - 1); }

  Mask mask_of(const std::vector<PrimeIndex>& indices) const {
    Mask m = 0;
    for (PrimeIndex i : indices) {
      auto it = std::lower_bound(coords.begin(), coords.end(), i);
      m |= Mask{1} << (it - coords.begin());
    }
    return m;
  }

  void mark(const CylinderSet& c) {
    const Mask ones = mask_of(c.divisible());
    const Mask fixed = ones | mask_of(c.not_divisible());
    const Mask free = full() & ~fixed;
    Mask sub = free;
    while (true) {
      marked[ones | sub] = 1;
      if (sub == 0) break;
      sub = (sub - 1) & free;
    }
  }

  void mark(const SetExpression& e) {
    for (const CylinderSet& c : e.terms) mark(c);
  }

  CylinderSet cell(Mask m) const {
    std::vector<PrimeIndex> in, out;
    for (std::size_t t = 0; t < coords.size(); ++t) (m >> t & 1 ? in : out).push_back(coords[t]);
    return CylinderSet(std::move(in), std::move(out));
  }

  SetExpression to_expression() const {
    SetExpression out = SetExpression::empty();
    for (std::size_t m = 0; m < marked.size(); ++m) {
      if (marked[m]) out.terms.push_back(cell(static_cast<Mask>(m)));
    }
    return out;
  }
};

std::vector<PrimeIndex> coordinates(const SetExpression& e) {
  std::vector<PrimeIndex> t;
  for (const CylinderSet& c : e.terms) {
    t.insert(t.end(), c.divisible().begin(), c.divisible().end());
    t.insert(t.end(), c.not_divisible().begin(), c.not_divisible().end());
  }
  sort_unique(t);
  return t;
}

CellGrid grid_of(const SetExpression& e, const std::vector<PrimeIndex>& coords, unsigned cap) {
  CellGrid g(coords, cap);
  g.mark(e);
  return g;
}

// Exact sampling of "p divides a uniform integer": rejection keeps the
// accepted range a multiple of p.
bool draw_divisible(std::mt19937_64& rng, std::uint64_t p) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t excess = (kMax % p + 1) % p;  // 2^64 mod p
  while (true) {
    const std::uint64_t u = rng();
    if (excess == 0 || u <= kMax - excess) return u % p == 0;
  }
}

}  // namespace

CylinderSet::CylinderSet(std::vector<PrimeIndex> divisible, std::vector<PrimeIndex> not_divisible)
    : divisible_(std::move(divisible)), not_divisible_(std::move(not_divisible)) {
  sort_unique(divisible_);
  sort_unique(not_divisible_);
  if ((!divisible_.empty() && divisible_.front() == 0) ||
      (!not_divisible_.empty() && not_divisible_.front() == 0)) {
    throw Error(ErrorKind::kInvalidArgument, "prime indices are 1-based");
  }
  std::vector<PrimeIndex> both;
  std::set_intersection(divisible_.begin(), divisible_.end(), not_divisible_.begin(),
                        not_divisible_.end(), std::back_inserter(both));
  if (!both.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "prime index " + std::to_string(both.front()) + " is both required and excluded");
  }
}

Rational cylinder_measure(const CylinderSet& c, const PrimeTable& primes) {
  BigInt num = 1, den = 1;
  for (PrimeIndex i : c.divisible()) den *= to_big(primes.prime(i));
  for (PrimeIndex i : c.not_divisible()) {
    const std::uint64_t p = primes.prime(i);
    num *= to_big(p - 1);
    den *= to_big(p);
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

SetExpression intersect(const CylinderSet& a, const CylinderSet& b) {
  std::vector<PrimeIndex> in = merged(a.divisible(), b.divisible());
  std::vector<PrimeIndex> out = merged(a.not_divisible(), b.not_divisible());
  std::vector<PrimeIndex> clash;
  std::set_intersection(in.begin(), in.end(), out.begin(), out.end(), std::back_inserter(clash));
  if (!clash.empty()) return SetExpression::empty();
  return SetExpression::of(CylinderSet(std::move(in), std::move(out)));
}

SetExpression complement(const CylinderSet& c) {
  CellGrid g(merged(c.divisible(), c.not_divisible()), kDefaultNormalizeCap);
  const Mask own = g.mask_of(c.divisible());
  SetExpression out = SetExpression::empty();
  for (Mask m = 0; m <= g.full(); ++m) {
    if (m != own) out.terms.push_back(g.cell(m));
    if (m == g.full()) break;
  }
  return out;
}

SetExpression normalize(const SetExpression& e, unsigned cap) {
  return grid_of(e, coordinates(e), cap).to_expression();
}

SetExpression unite(const SetExpression& a, const SetExpression& b) {
  SetExpression out{a.terms, false};
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  if (b.terms.empty()) out.normalized = a.normalized;
  if (a.terms.empty()) out.normalized = b.normalized;
  return out;
}

SetExpression intersect(const SetExpression& a, const SetExpression& b, unsigned cap) {
  const auto coords = merged(coordinates(a), coordinates(b));
  CellGrid ga = grid_of(a, coords, cap);
  const CellGrid gb = grid_of(b, coords, cap);
  for (std::size_t m = 0; m < ga.marked.size(); ++m) ga.marked[m] &= gb.marked[m];
  return ga.to_expression();
}

SetExpression complement(const SetExpression& e, unsigned cap) {
  CellGrid g = grid_of(e, coordinates(e), cap);
  for (auto& m : g.marked) m = !m;
  return g.to_expression();
}

bool disjoint(const SetExpression& a, const SetExpression& b, unsigned cap) {
  return intersect(a, b, cap).terms.empty();
}

Rational measure(const SetExpression& e, const PrimeTable& primes, unsigned cap) {
  const SetExpression disjoint_form = e.normalized ? e : normalize(e, cap);
  const auto coords = coordinates(disjoint_form);
  std::vector<unsigned long> ps(coords.size());
  for (std::size_t t = 0; t < coords.size(); ++t) ps[t] = primes.prime(coords[t]);
  // Common denominator prod_{i in T} p_i; a term contributes
  // prod_J (p - 1) * prod_{T \ (I u J)} p.
  BigInt den = 1;
  for (unsigned long p : ps) den *= p;
  BigInt num = 0;
  BigInt term;
  for (const CylinderSet& c : disjoint_form.terms) {
    term = 1;
    auto in = c.divisible().begin();
    auto out = c.not_divisible().begin();
    for (std::size_t t = 0; t < coords.size(); ++t) {
      if (in != c.divisible().end() && *in == coords[t]) {
        ++in;
      } else if (out != c.not_divisible().end() && *out == coords[t]) {
        ++out;
        term *= ps[t] - 1;
      } else {
        term *= ps[t];
      }
    }
    num += term;
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

bool contains(const CylinderSet& c, std::uint64_t n, const PrimeTable& primes) {
  for (PrimeIndex i : c.divisible()) {
    if (n % primes.prime(i) != 0) return false;
  }
  for (PrimeIndex i : c.not_divisible()) {
    if (n % primes.prime(i) == 0) return false;
  }
  return true;
}

bool contains(const SetExpression& e, std::uint64_t n, const PrimeTable& primes) {
  return std::any_of(e.terms.begin(), e.terms.end(),
                     [&](const CylinderSet& c) { return contains(c, n, primes); });
}

Rational euler_product(std::size_t prime_count, const PrimeTable& primes) {
  if (prime_count == 0) throw Error(ErrorKind::kInvalidArgument, "prime_count must be positive");
  Rational out = 1;
  for (std::size_t i = 1; i <= prime_count; ++i) {
    const BigInt pp = to_big(primes.prime(i)) * to_big(primes.prime(i));
    out *= Rational(pp - 1, pp);
  }
  out.canonicalize();
  return out;
}

Rational euler_tail_bound(std::size_t prime_count, const PrimeTable& primes) {
  return Rational(BigInt(1), to_big(primes.prime(prime_count)));
}

SampleEstimate sample_coprime_estimate(std::size_t prime_count, std::uint64_t samples,
                                       std::uint64_t seed, const PrimeTable& primes) {
  if (prime_count == 0) throw Error(ErrorKind::kInvalidArgument, "prime_count must be positive");
  if (samples == 0) throw Error(ErrorKind::kInvalidArgument, "samples must be positive");
  std::vector<std::uint64_t> ps(prime_count);
  for (std::size_t i = 0; i < prime_count; ++i) ps[i] = primes.prime(i + 1);

  std::mt19937_64 rng(seed);
  SampleEstimate out;
  out.samples = samples;
  for (std::uint64_t s = 0; s < samples; ++s) {
    bool shared = false;
    for (std::uint64_t p : ps) {
      const bool x_divisible = draw_divisible(rng, p);
      const bool y_divisible = draw_divisible(rng, p);
      shared = shared || (x_divisible && y_divisible);
    }
    out.coprime_hits += !shared;
  }
  const double m = static_cast<double>(samples);
  out.estimate = static_cast<double>(out.coprime_hits) / m;
  out.standard_error = std::sqrt(out.estimate * (1.0 - out.estimate) / m);
  return out;
}

}  // namespace coprimality
