// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <cstdlib>
#include <iostream>
#include <string>

#include "coprimality/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = coprimality::kAcceptanceSeed;
  if (argc > 1) seed = std::stoull(argv[1]);
  int failed = 0;
  for (auto check : {+[](std::uint64_t) { return coprimality::check_density_convergence(); },
                     +[](std::uint64_t s) { return coprimality::check_oracle_equivalence(s); },
                     +[](std::uint64_t s) { return coprimality::check_error_envelope(s); },
                     +[](std::uint64_t) { return coprimality::check_residue_bound(); },
                     +[](std::uint64_t s) { return coprimality::check_rectangle_lemma(s); },
                     +[](std::uint64_t s) { return coprimality::check_shift_witnesses(s); },
                     +[](std::uint64_t s) { return coprimality::check_cylinder_measure(s); },
                     +[](std::uint64_t s) { return coprimality::check_product_measure(s); }}) {
    const auto result = check(seed);
    std::cout << coprimality::format_criterion_line(result) << std::endl;
    failed += !result.passed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << '\n';
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
