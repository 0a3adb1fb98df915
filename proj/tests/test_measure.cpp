#include <doctest.h>

#include <random>

#include "coprimality/error.hpp"
#include "coprimality/expression_parser.hpp"
#include "coprimality/measure.hpp"
#include "coprimality/random.hpp"

using namespace coprimality;

namespace {

const PrimeTable& primes() {
  static const PrimeTable table(1000);
  return table;
}

CylinderSet random_cylinder(std::mt19937_64& rng, PrimeIndex max_index) {
  std::vector<PrimeIndex> in, out;
  for (PrimeIndex i = 1; i <= max_index; ++i) {
    const auto r = uniform_int(rng, 0, 2);
    if (r == 1) in.push_back(i);
    if (r == 2) out.push_back(i);
  }
  return CylinderSet(in, out);
}

SetExpression random_expression(std::mt19937_64& rng, PrimeIndex max_index) {
  SetExpression e;
  for (auto t = uniform_int(rng, 1, 4); t > 0; --t) e.terms.push_back(random_cylinder(rng, max_index));
  return e;
}

// Inclusion-exclusion over the terms, using only cylinder intersections.
Rational inclusion_exclusion(const std::vector<CylinderSet>& terms) {
  Rational total = 0;
  const std::size_t k = terms.size();
  for (std::size_t subset = 1; subset < (std::size_t{1} << k); ++subset) {
    CylinderSet meet;
    bool empty = false;
    for (std::size_t i = 0; i < k && !empty; ++i) {
      if (!(subset >> i & 1)) continue;
      const SetExpression m = intersect(meet, terms[i]);
      if (m.terms.empty()) empty = true;
      else meet = m.terms.front();
    }
    if (empty) continue;
    const Rational v = cylinder_measure(meet, primes());
    if (__builtin_popcountll(subset) % 2) total += v;
    else total -= v;
  }
  return total;
}

}  // namespace

TEST_CASE("cylinder validation") {
  CHECK_THROWS_AS(CylinderSet({1}, {1}), Error);
  CHECK_THROWS_AS(CylinderSet({0}, {}), Error);
  const CylinderSet c({3, 1, 3}, {});
  CHECK(c.divisible() == std::vector<PrimeIndex>{1, 3});
  CHECK(CylinderSet{}.is_universe());
}

TEST_CASE("cylinder measure examples") {
  CHECK(cylinder_measure(CylinderSet({1}, {}), primes()) == Rational(1, 2));
  CHECK(cylinder_measure(CylinderSet{}, primes()) == 1);
  CHECK(cylinder_measure(CylinderSet({1}, {2}), primes()) == Rational(1, 3));
  CHECK_THROWS_AS(cylinder_measure(CylinderSet({1000}, {}), primes()), Error);
}

TEST_CASE("density of {even, not divisible by 3} on [1, 1e6]") {
  const CylinderSet c({1}, {2});
  std::uint64_t hits = 0;
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) hits += contains(c, n, primes());
  CHECK(abs(to_rational(hits, 1'000'000) - Rational(1, 3)) < Rational(1, 100'000));
}

TEST_CASE("intersect examples") {
  CHECK(intersect(CylinderSet({1}, {}), CylinderSet({}, {1})).terms.empty());
  const SetExpression both = intersect(CylinderSet({1}, {}), CylinderSet({2}, {}));
  REQUIRE(both.terms.size() == 1);
  CHECK(both.terms[0] == CylinderSet({1, 2}, {}));
  const CylinderSet c({2, 5}, {3});
  CHECK(intersect(CylinderSet{}, c).terms == std::vector<CylinderSet>{c});
}

TEST_CASE("complement examples") {
  CHECK(complement(CylinderSet({1}, {})).terms == std::vector<CylinderSet>{CylinderSet({}, {1})});
  CHECK(complement(CylinderSet{}).terms.empty());
  const SetExpression c = complement(CylinderSet({1}, {2}));
  CHECK(c.normalized);
  REQUIRE(c.terms.size() == 3);
  CHECK(std::find(c.terms.begin(), c.terms.end(), CylinderSet({}, {1, 2})) != c.terms.end());
  CHECK(std::find(c.terms.begin(), c.terms.end(), CylinderSet({2}, {1})) != c.terms.end());
  CHECK(std::find(c.terms.begin(), c.terms.end(), CylinderSet({1, 2}, {})) != c.terms.end());
  CHECK(measure(c, primes()) == Rational(2, 3));
}

TEST_CASE("normalize examples") {
  const SetExpression whole = normalize(SetExpression{{CylinderSet({1}, {}), CylinderSet({}, {1})}});
  CHECK(whole.terms.size() == 2);
  CHECK(measure(whole, primes()) == 1);

  const SetExpression dup = normalize(SetExpression{{CylinderSet({1}, {}), CylinderSet({1}, {})}});
  CHECK(dup.terms == std::vector<CylinderSet>{CylinderSet({1}, {})});

  // p_1 = 2, p_2 = 3: 1/2 + 1/3 - 1/6.
  const SetExpression e{{CylinderSet({1}, {}), CylinderSet({2}, {})}};
  const SetExpression cells = normalize(e);
  CHECK(cells.normalized);
  CHECK(cells.terms.size() == 3);
  CHECK(measure(cells, primes()) == Rational(2, 3));
  CHECK(inclusion_exclusion(e.terms) == Rational(2, 3));

  CHECK(normalize(SetExpression{}).terms.empty());
  CHECK(normalize(SetExpression{{CylinderSet{}}}).terms == std::vector<CylinderSet>{CylinderSet{}});
}

TEST_CASE("normalize enforces the coordinate cap") {
  std::vector<PrimeIndex> many(25);
  for (PrimeIndex i = 0; i < 25; ++i) many[i] = i + 1;
  const SetExpression e{{CylinderSet(many, {})}};
  try {
    normalize(e);
    FAIL("expected resource-limit");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::kResourceLimit);
  }
  CHECK(normalize(e, 25).terms.size() == 1);
  // An already-disjoint single cylinder is measured without expansion.
  CHECK(measure(SetExpression::of(CylinderSet(many, {})), primes()) ==
        cylinder_measure(CylinderSet(many, {}), primes()));
}

TEST_CASE("measure examples") {
  CHECK(measure(SetExpression{{CylinderSet({1}, {}), CylinderSet({}, {1})}}, primes()) == 1);
  CHECK(measure(SetExpression::empty(), primes()) == 0);
  CHECK(measure(SetExpression{{CylinderSet({1}, {}), CylinderSet({2}, {})}}, primes()) == Rational(2, 3));
}

TEST_CASE("contains examples") {
  CHECK(contains(CylinderSet({1}, {}), 4, primes()));
  CHECK_FALSE(contains(CylinderSet({}, {1}), 4, primes()));
  CHECK(contains(CylinderSet({1}, {2}), 10, primes()));
}

TEST_CASE("measure matches inclusion-exclusion on random unions") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    const SetExpression e = random_expression(rng, 6);
    REQUIRE(measure(e, primes()) == inclusion_exclusion(e.terms));
  }
}

TEST_CASE("finite additivity on disjoint expressions") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 300; ++i) {
    const SetExpression x = random_expression(rng, 6);
    const SetExpression y = intersect(random_expression(rng, 6), complement(x));
    REQUIRE(disjoint(x, y));
    REQUIRE(measure(unite(x, y), primes()) == measure(x, primes()) + measure(y, primes()));
  }
}

TEST_CASE("modularity on random cylinder pairs") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 300; ++i) {
    const CylinderSet a = random_cylinder(rng, 8), b = random_cylinder(rng, 8);
    REQUIRE(cylinder_measure(a, primes()) + cylinder_measure(b, primes()) ==
            measure(unite(SetExpression::of(a), SetExpression::of(b)), primes()) +
                measure(intersect(a, b), primes()));
  }
}

TEST_CASE("expression complement and measure") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    const SetExpression e = random_expression(rng, 7);
    REQUIRE(measure(e, primes()) + measure(complement(e), primes()) == 1);
    REQUIRE(disjoint(e, complement(e)));
  }
}

TEST_CASE("membership respects field operations") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 100; ++i) {
    const SetExpression a = random_expression(rng, 5), b = random_expression(rng, 5);
    const SetExpression meet = intersect(a, b), join = unite(a, b), not_a = complement(a);
    const SetExpression cells = normalize(a);
    for (std::uint64_t n = 1; n <= 3000; ++n) {
      const bool in_a = contains(a, n, primes()), in_b = contains(b, n, primes());
      REQUIRE(contains(meet, n, primes()) == (in_a && in_b));
      REQUIRE(contains(join, n, primes()) == (in_a || in_b));
      REQUIRE(contains(not_a, n, primes()) == !in_a);
      REQUIRE(contains(cells, n, primes()) == in_a);
    }
  }
}

TEST_CASE("empirical densities approach cylinder measures") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 10; ++i) {
    const CylinderSet c = random_cylinder(rng, 5);
    std::uint64_t hits = 0;
    // One full period of the first five primes makes the density exact.
    constexpr std::uint64_t kPeriod = 2 * 3 * 5 * 7 * 11;
    for (std::uint64_t n = 1; n <= kPeriod; ++n) hits += contains(c, n, primes());
    REQUIRE(to_rational(hits, kPeriod) == cylinder_measure(c, primes()));
  }
}

TEST_CASE("euler product") {
  CHECK(euler_product(1, primes()) == Rational(3, 4));
  CHECK(euler_product(2, primes()) == Rational(2, 3));
  const Rational e25 = euler_product(25, primes());
  CHECK(abs(e25 - parse_decimal("0.6079271")) < Rational(2, 1000));
  // Value from an independent fraction computation.
  CHECK(to_decimal(e25, 12) == "0.609033725399");
  Rational previous = 1;
  for (std::size_t k = 1; k <= 168; ++k) {
    const Rational v = euler_product(k, primes());
    REQUIRE(v < previous);
    REQUIRE(v > six_over_pi_squared());
    REQUIRE(v - six_over_pi_squared() < euler_tail_bound(k, primes()));
    previous = v;
  }
  CHECK_THROWS_AS(euler_product(0, primes()), Error);
  CHECK_THROWS_AS(euler_product(169, primes()), Error);
}

TEST_CASE("monte carlo sampler") {
  const SampleEstimate a = sample_coprime_estimate(25, 1'000'000, 20240601, primes());
  const double exact = euler_product(25, primes()).get_d();
  CHECK(std::abs(a.estimate - exact) <= 4 * a.standard_error);

  const SampleEstimate single = sample_coprime_estimate(1, 200'000, 7, primes());
  CHECK(std::abs(single.estimate - 0.75) <= 4 * single.standard_error);

  const SampleEstimate again = sample_coprime_estimate(5, 10'000, 99, primes());
  const SampleEstimate same = sample_coprime_estimate(5, 10'000, 99, primes());
  const SampleEstimate other = sample_coprime_estimate(5, 10'000, 100, primes());
  CHECK(again.coprime_hits == same.coprime_hits);
  CHECK(again.estimate == same.estimate);
  CHECK(again.coprime_hits != other.coprime_hits);

  CHECK_THROWS_AS(sample_coprime_estimate(3, 0, 1, primes()), Error);
  CHECK_THROWS_AS(sample_coprime_estimate(0, 10, 1, primes()), Error);
}

TEST_CASE("expression parser") {
  const SetExpression e = parse_set_expression("A{2|;3\xE2\x88\xA4} U A{5|}", primes());
  REQUIRE(e.terms.size() == 2);
  CHECK(e.terms[0] == CylinderSet({1}, {2}));
  CHECK(e.terms[1] == CylinderSet({3}, {}));
  CHECK(measure(e, primes()) == inclusion_exclusion(e.terms));

  CHECK(parse_set_expression("", primes()).terms.empty());
  CHECK(parse_set_expression("A{}", primes()).terms == std::vector<CylinderSet>{CylinderSet{}});
  CHECK(parse_set_expression("A{3,7~}", primes()).terms[0] == CylinderSet({}, {2, 4}));
  CHECK(parse_set_expression("A{2,3|} \xE2\x88\xAA A{5\xE2\x88\xA4}", primes()).terms.size() == 2);

  for (const char* bad : {"A{4|}", "A{2}", "B{2|}", "A{2|", "A{2|} A{3|}", "A{2|;2~}", "A{1009|}"}) {
    try {
      parse_set_expression(bad, primes());
      FAIL("accepted " << bad);
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::kParse);
    }
  }
  CHECK(format_set_expression(e, primes()) == "A{2|;3\xE2\x88\xA4} U A{5|}");
  CHECK(format_set_expression(parse_set_expression(format_set_expression(e, primes()), primes()),
                              primes()) == format_set_expression(e, primes()));
}
