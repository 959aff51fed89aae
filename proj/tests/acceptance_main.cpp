// Prints one line per acceptance criterion; exits 1 if any fails.
#include <cstdlib>
#include <iostream>
#include <vector>

#include "confsym/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (int i = 1; i <= confsym::kCriterionCount; ++i) ids.push_back(i);
  }
  bool ok = true;
  for (int id : ids) {
    const confsym::CriterionResult r = confsym::run_criterion(id);
    std::cout << confsym::format_result(r) << std::endl;
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
