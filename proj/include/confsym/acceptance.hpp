#pragma once

#include <string>
#include <vector>

namespace confsym {

inline constexpr int kCriterionCount = 11;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  // One-line summary of what was checked and, on failure, what was observed.
  std::string detail;
};

// Runs one acceptance criterion (1..11). Exact comparisons throughout; the
// criterion also fails when it exceeds its time budget.
CriterionResult run_criterion(int id);

// All criteria in order, or the listed ones.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {});

// "criterion N: PASS|FAIL  title  (t s / budget s)  detail".
std::string format_result(const CriterionResult& r);

}  // namespace confsym
