// Runs the acceptance criteria at full budget and prints one line per criterion.
//   acceptance_test                 all criteria
//   acceptance_test --criterion N   only criterion N

#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <vector>

#include "cyclineq/selftest.hpp"

int main(int argc, char** argv) {
  cyclineq::AcceptanceBudget budget = cyclineq::AcceptanceBudget::full();
  std::vector<int> ids;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--criterion") == 0 && a + 1 < argc) {
      ids.push_back(std::atoi(argv[++a]));
    } else if (std::strcmp(argv[a], "--threads") == 0 && a + 1 < argc) {
      budget.threads = std::atoi(argv[++a]);
    } else {
      std::cerr << "usage: acceptance_test [--criterion N]... [--threads T]\n";
      return 2;
    }
  }
  if (ids.empty()) {
    for (int id = 1; id <= cyclineq::kCriterionCount; ++id) ids.push_back(id);
  }

  bool all = true;
  for (int id : ids) {
    const auto r = cyclineq::run_criterion(id, budget);
    all = all && r.passed;
    std::cout << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.name << " ("
              << std::fixed << std::setprecision(1) << r.seconds << "s) " << r.detail << std::endl;
  }
  return all ? 0 : 1;
}
