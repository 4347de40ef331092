#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace upsilon {

enum class Suite { All, Paper, Property };

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // first failure, or a summary of what was checked
  double seconds = 0;
};

// Acceptance criteria 1..14. Suite::Paper criteria check closed forms and worked
// examples; property criteria run randomized or exhaustive checks.
std::vector<CriterionResult> run_acceptance(Suite suite, std::uint64_t seed = 1729);
std::string format_results(const std::vector<CriterionResult>& results);

}  // namespace upsilon
