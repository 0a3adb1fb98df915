#include "coprimality/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <utility>

#include "coprimality/counting.hpp"
#include "coprimality/crt.hpp"
#include "coprimality/measure.hpp"
#include "coprimality/random.hpp"
#include "coprimality/residue.hpp"

namespace coprimality {

namespace {

using Clock = std::chrono::steady_clock;

// Runs `body`, which fills expected/observed and returns the verdict, and
// folds in the runtime bound.
CriterionResult timed(int id, std::string name, double limit,
                      const std::function<bool(CriterionResult&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.time_limit_seconds = limit;
  const auto start = Clock::now();
  bool ok = body(r);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit > 0 && r.seconds >= limit) {
    ok = false;
    r.observed += " [runtime bound exceeded]";
  }
  r.passed = ok;
  return r;
}

Rational decimal(const char* text) { return parse_decimal(text); }

std::vector<std::pair<std::uint64_t, std::uint64_t>> random_pairs(std::uint64_t seed,
                                                                  std::size_t count,
                                                                  std::uint64_t max) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t a = uniform_int(rng, 1, max);
    out.emplace_back(a, uniform_int(rng, 1, max));
  }
  return out;
}

CylinderSet random_cylinder(std::mt19937_64& rng, PrimeIndex max_index) {
  std::vector<PrimeIndex> in, out;
  for (PrimeIndex i = 1; i <= max_index; ++i) {
    switch (uniform_int(rng, 0, 2)) {
      case 1: in.push_back(i); break;
      case 2: out.push_back(i); break;
      default: break;
    }
  }
  return CylinderSet(std::move(in), std::move(out));
}

SetExpression random_expression(std::mt19937_64& rng, PrimeIndex max_index) {
  SetExpression e;
  const std::uint64_t terms = uniform_int(rng, 1, 3);
  for (std::uint64_t t = 0; t < terms; ++t) e.terms.push_back(random_cylinder(rng, max_index));
  return e;
}

// Every cylinder over indices 1..max_index (3^max_index of them).
std::vector<CylinderSet> all_cylinders(PrimeIndex max_index) {
  std::vector<CylinderSet> out;
  std::uint64_t total = 1;
  for (PrimeIndex i = 0; i < max_index; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<PrimeIndex> in, not_in;
    std::uint64_t c = code;
    for (PrimeIndex i = 1; i <= max_index; ++i, c /= 3) {
      if (c % 3 == 1) in.push_back(i);
      if (c % 3 == 2) not_in.push_back(i);
    }
    out.emplace_back(std::move(in), std::move(not_in));
  }
  return out;
}

}  // namespace

CriterionResult check_density_convergence() {
  return timed(1, "coprimality density at n = 100000", 5.0, [](CriterionResult& r) {
    constexpr std::uint64_t n = 100'000;
    const MobiusTable mobius(n);
    const DensityReport report = density(n, n, mobius);
    const Rational gap_to_reference = abs(report.ratio - decimal("0.6079271019"));
    const Rational gap_to_limit = abs(report.ratio - six_over_pi_squared());
    const Rational certified = report.limit_gap_bound() + six_over_pi_squared_truncation();
    r.expected = "|ratio - 0.6079271019| <= 5e-4; |ratio - 6/pi^2| <= error_bound + 1/(n-1)";
    r.observed = "ratio=" + to_decimal(report.ratio, 12) + " gap=" + to_decimal(gap_to_limit, 12) +
                 " certified=" + to_decimal(certified, 12);
    return gap_to_reference <= decimal("0.0005") && gap_to_limit <= certified &&
           report.envelope_holds();
  });
}

CriterionResult check_oracle_equivalence(std::uint64_t seed) {
  return timed(2, "Mobius count equals brute-force count", 60.0, [seed](CriterionResult& r) {
    const CoprimeGrid grid(3000);
    const MobiusTable mobius(3000);
    std::uint64_t checked = 0, mismatches = 0;
    for (std::uint64_t n1 = 1; n1 <= 300; ++n1) {
      for (std::uint64_t n2 = 1; n2 <= 300; ++n2, ++checked) {
        mismatches += count_coprime_mobius(n1, n2, mobius) != grid.count(n1, n2);
      }
    }
    const auto pairs = random_pairs(seed, 200, 3000);
    for (const auto& [n1, n2] : pairs) {
      ++checked;
      mismatches += count_coprime_mobius(n1, n2, mobius) != grid.count(n1, n2);
    }
    // The grid itself against the single-call enumerator.
    for (std::size_t i = 0; i < 5; ++i) {
      const auto [n1, n2] = pairs[i];
      ++checked;
      mismatches += count_coprime_brute(n1, n2) != grid.count(n1, n2);
    }
    r.expected = "0 mismatches over 300x300 exhaustive + 200 random pairs <= 3000";
    r.observed = std::to_string(mismatches) + " mismatches in " + std::to_string(checked) + " checks";
    return mismatches == 0;
  });
}

CriterionResult check_error_envelope(std::uint64_t seed) {
  return timed(3, "certified error envelope holds exactly", 0.0, [seed](CriterionResult& r) {
    const MobiusTable mobius(3000);
    const auto partial = mobius_partial_sums(3000, mobius);
    const auto harmonic = harmonic_numbers(3000);
    std::uint64_t checked = 0, violations = 0;
    auto check = [&](std::uint64_t n1, std::uint64_t n2) {
      const std::uint64_t m = std::min(n1, n2);
      ++checked;
      violations +=
          !envelope_holds(n1, n2, count_coprime_mobius(n1, n2, mobius), partial[m], harmonic[m]);
    };
    for (std::uint64_t n1 = 1; n1 <= 300; ++n1) {
      for (std::uint64_t n2 = 1; n2 <= 300; ++n2) check(n1, n2);
    }
    for (const auto& [n1, n2] : random_pairs(seed, 200, 3000)) check(n1, n2);
    r.expected = "|q/(n1 n2) - sum mu(k)/k^2| <= (n1+n2) H_m/(n1 n2) for every tested pair";
    r.observed = std::to_string(violations) + " violations in " + std::to_string(checked) + " pairs";
    return violations == 0;
  });
}

CriterionResult check_residue_bound() {
  return timed(4, "residue-class upper bound", 30.0, [](CriterionResult& r) {
    const PrimeTable primes(10'000);
    std::uint64_t mismatches = 0;
    for (std::uint64_t t1 = 1; t1 <= 60; ++t1) {
      for (std::uint64_t t2 = 1; t2 <= 60; ++t2) {
        const ResidueBoundReport report = r_count(t1, t2, primes);
        mismatches += report.ratio != report.closed_form;
      }
    }
    const Rational four = residue_upper_bound(4, primes);
    const Rational hundred = residue_upper_bound(100, primes);
    const Rational gap = hundred - six_over_pi_squared();
    r.expected = "ratio = closed form for t1,t2 <= 60; bound(4) = 768/1225; |bound(100) - 6/pi^2| < 1e-3";
    r.observed = std::to_string(mismatches) + " mismatches; bound(4)=" + four.get_str() +
                 "; bound(100)-6/pi^2=" + to_decimal(gap, 8);
    return mismatches == 0 && four == to_rational(768, 1225) && gap > 0 && gap < decimal("0.001");
  });
}

CriterionResult check_rectangle_lemma(std::uint64_t seed) {
  return timed(5, "rectangle nonemptiness lemma", 0.0, [seed](CriterionResult& r) {
    std::uint64_t disagreements = 0, rects = 0;
    for (std::uint64_t k1 = 1; k1 <= 12; ++k1) {
      for (std::uint64_t k2 = 1; k2 <= 12; ++k2) {
        for (std::uint64_t j1 = 0; j1 < k1; ++j1) {
          for (std::uint64_t j2 = 0; j2 < k2; ++j2, ++rects) {
            const ResidueRect rect(j1, k1, j2, k2);
            disagreements += rect_nonempty_criterion(rect) != rect_coprime_search(rect, 8).has_value();
          }
        }
      }
    }
    const PrimeTable primes(1'000'000);
    std::mt19937_64 rng(seed);
    std::uint64_t invalid = 0, fallbacks = 0;
    for (int built = 0; built < 500;) {
      const std::uint64_t k1 = uniform_int(rng, 1, 10'000), k2 = uniform_int(rng, 1, 10'000);
      const ResidueRect rect(uniform_int(rng, 0, k1 - 1), k1, uniform_int(rng, 0, k2 - 1), k2);
      if (!rect_nonempty_criterion(rect)) continue;
      ++built;
      const RectWitness w = construct_coprime_in_rect(rect, primes);
      invalid += !(rect.contains(w.x, w.y) && w.x >= 1 && w.y >= 1 && gcd(w.x, w.y) == 1);
      fallbacks += w.path == WitnessPath::kSearchFallback;
    }
    r.expected = "criterion = search on all rectangles with moduli <= 12; 500 valid constructions";
    r.observed = std::to_string(disagreements) + " disagreements in " + std::to_string(rects) +
                 " rectangles; " + std::to_string(invalid) + " invalid witnesses (" +
                 std::to_string(fallbacks) + " via search fallback)";
    return disagreements == 0 && invalid == 0;
  });
}

CriterionResult check_shift_witnesses(std::uint64_t seed) {
  return timed(6, "shift-invariance witnesses", 10.0, [seed](CriterionResult& r) {
    const PrimeTable primes(100);
    std::mt19937_64 rng(seed);
    std::uint64_t failures = 0;
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<ShiftPair> shifts(uniform_int(rng, 1, 8));
      for (auto& [a, b] : shifts) {
        a = uniform_int(rng, 0, 100);
        b = uniform_int(rng, 0, 100);
      }
      const ShiftWitnessReport report = shift_witness(shifts, primes);
      bool ok = verify_shift_witness(report);
      std::uint64_t product = 1;
      for (std::uint64_t p : report.assigned_primes) product *= p;
      // Least positive solution: the congruences fix a, b modulo the
      // product, so membership in [1, product] is minimality.
      const auto [a, b] = report.witness;
      ok = ok && a >= 1 && a <= product && b >= 1 && b <= product;
      for (std::size_t i = 0; i < shifts.size(); ++i) {
        const std::uint64_t p = report.assigned_primes[i];
        ok = ok && (a + shifts[i].first) % p == 0 && (b + shifts[i].second) % p == 0;
      }
      failures += !ok;
    }
    r.expected = "500/500 witnesses verified and CRT-minimal";
    r.observed = std::to_string(500 - failures) + "/500";
    return failures == 0;
  });
}

CriterionResult check_cylinder_measure(std::uint64_t seed) {
  return timed(7, "cylinder-field measure identities", 0.0, [seed](CriterionResult& r) {
    const PrimeTable primes(1000);
    std::mt19937_64 rng(seed);
    std::ostringstream notes;
    bool ok = true;

    std::uint64_t additivity_failures = 0;
    for (int i = 0; i < 300; ++i) {
      const SetExpression x = random_expression(rng, 6);
      const SetExpression y = intersect(random_expression(rng, 6), complement(x));
      if (!disjoint(x, y)) {
        ++additivity_failures;
        continue;
      }
      additivity_failures += measure(unite(x, y), primes) != measure(x, primes) + measure(y, primes);
    }
    notes << "additivity failures " << additivity_failures;
    ok = ok && additivity_failures == 0;

    std::uint64_t modularity_failures = 0;
    for (int i = 0; i < 300; ++i) {
      const CylinderSet a = random_cylinder(rng, 8), b = random_cylinder(rng, 8);
      const SetExpression sa = SetExpression::of(a), sb = SetExpression::of(b);
      modularity_failures += cylinder_measure(a, primes) + cylinder_measure(b, primes) !=
                             measure(unite(sa, sb), primes) + measure(intersect(a, b), primes);
    }
    notes << "; modularity failures " << modularity_failures;
    ok = ok && modularity_failures == 0;

    std::uint64_t complement_failures = 0;
    const auto cylinders = all_cylinders(10);
    for (const CylinderSet& c : cylinders) {
      complement_failures += cylinder_measure(c, primes) + measure(complement(c), primes) != 1;
    }
    notes << "; complement failures " << complement_failures << "/" << cylinders.size();
    ok = ok && complement_failures == 0;

    // Densities on [1, 1e6]; divisibility by subsets of {2, 5} is exact.
    constexpr std::uint64_t kRange = 1'000'000;
    std::vector<CylinderSet> probes = {CylinderSet{{1}, {}}, CylinderSet{{3}, {}},
                                       CylinderSet{{1, 3}, {}}};
    const std::size_t exact_probes = probes.size();
    for (int i = 0; i < 40; ++i) probes.push_back(random_cylinder(rng, 5));
    Rational worst = 0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      std::uint64_t hits = 0;
      for (std::uint64_t n = 1; n <= kRange; ++n) hits += contains(probes[i], n, primes);
      const Rational gap = abs(to_rational(hits, kRange) - cylinder_measure(probes[i], primes));
      if (gap > worst) worst = gap;
      if (i < exact_probes) ok = ok && gap == 0;
    }
    notes << "; worst density gap " << to_decimal(worst, 8);
    ok = ok && worst <= decimal("0.01");

    std::uint64_t membership_failures = 0;
    const auto small = all_cylinders(4);
    std::vector<SetExpression> complements;
    std::vector<SetExpression> intersections;
    for (const CylinderSet& c : small) complements.push_back(complement(c));
    for (const CylinderSet& a : small) {
      for (const CylinderSet& b : small) intersections.push_back(intersect(a, b));
    }
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
      std::vector<bool> in(small.size());
      for (std::size_t i = 0; i < small.size(); ++i) {
        in[i] = contains(small[i], n, primes);
        membership_failures += contains(complements[i], n, primes) == in[i];
      }
      for (std::size_t i = 0; i < small.size(); ++i) {
        for (std::size_t j = 0; j < small.size(); ++j) {
          membership_failures +=
              contains(intersections[i * small.size() + j], n, primes) != (in[i] && in[j]);
        }
      }
    }
    notes << "; membership failures " << membership_failures;
    ok = ok && membership_failures == 0;

    r.expected = "exact additivity, modularity, complement; density gap <= 1e-2";
    r.observed = notes.str();
    return ok;
  });
}

CriterionResult check_product_measure(std::uint64_t seed) {
  return timed(8, "product measure of coprime pairs", 20.0, [seed](CriterionResult& r) {
    const PrimeTable primes(10'000);
    bool decreasing = true;
    Rational previous = 2;
    for (std::size_t k = 1; k <= 200; ++k) {
      const Rational value = euler_product(k, primes);
      decreasing = decreasing && value < previous && value > six_over_pi_squared();
      previous = value;
    }
    const Rational e25 = euler_product(25, primes);
    const Rational gap = abs(e25 - decimal("0.6079271"));
    const SampleEstimate mc = sample_coprime_estimate(25, 1'000'000, seed, primes);
    const double exact = e25.get_d();
    const double z = std::abs(mc.estimate - exact) / mc.standard_error;
    char buf[160];
    std::snprintf(buf, sizeof buf, "; MC estimate %.6f, se %.6f, |z| = %.3f", mc.estimate,
                  mc.standard_error, z);
    r.expected = "strictly decreasing and > 6/pi^2; |E(25) - 0.6079271| < 2e-3; MC within 4 se";
    r.observed = std::string(decreasing ? "monotone" : "NOT monotone") + "; E(25)=" +
                 to_decimal(e25, 8) + buf;
    return decreasing && gap < decimal("0.002") && z <= 4.0;
  });
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  return {check_density_convergence(),      check_oracle_equivalence(seed),
          check_error_envelope(seed),       check_residue_bound(),
          check_rectangle_lemma(seed),      check_shift_witnesses(seed),
          check_cylinder_measure(seed),     check_product_measure(seed)};
}

std::string format_criterion_line(const CriterionResult& r) {
  char time[64];
  if (r.time_limit_seconds > 0) {
    std::snprintf(time, sizeof time, "%.2fs / limit %.0fs", r.seconds, r.time_limit_seconds);
  } else {
    std::snprintf(time, sizeof time, "%.2fs", r.seconds);
  }
  return std::string(r.passed ? "[PASS]" : "[FAIL]") + " criterion " + std::to_string(r.id) +
         ": " + r.name + " | " + r.observed + " | " + time;
}

}  // namespace coprimality
