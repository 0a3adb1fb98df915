#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coprimality {

inline constexpr std::uint64_t kAcceptanceSeed = 20240601;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string expected;
  std::string observed;
  double seconds = 0.0;
  double time_limit_seconds = 0.0;  // 0: no runtime bound
};

// The reproduction checks. Each one runs its full suite at the pinned
// sizes and tolerances; a criterion with a runtime bound also fails when
// the bound is exceeded.
CriterionResult check_density_convergence();
CriterionResult check_oracle_equivalence(std::uint64_t seed = kAcceptanceSeed);
CriterionResult check_error_envelope(std::uint64_t seed = kAcceptanceSeed);
CriterionResult check_residue_bound();
CriterionResult check_rectangle_lemma(std::uint64_t seed = kAcceptanceSeed);
CriterionResult check_shift_witnesses(std::uint64_t seed = kAcceptanceSeed);
CriterionResult check_cylinder_measure(std::uint64_t seed = kAcceptanceSeed);
CriterionResult check_product_measure(std::uint64_t seed = kAcceptanceSeed);

std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kAcceptanceSeed);

std::string format_criterion_line(const CriterionResult& result);

}  // namespace coprimality
