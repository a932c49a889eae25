#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cyclineq {

// Sizes for the acceptance run. full() is the exit gate; reduced() is what
// `cyclineq selftest` uses by default.
struct AcceptanceBudget {
  int main_max_n = 5;          // criterion 1: all sigma in S_n, n = 2..main_max_n
  int grid_max_n = 4;          // grid oracle for n <= grid_max_n
  int grid_points = 13;
  int restarts = 50;
  int search_iters = 400;
  int certificate_max_n = 5;   // criterion 2
  int certificate_stride = 1;  // keep every stride-th admissible pair
  int random_vectors = 10;
  int band_max_n = 8;          // criterion 7
  int lucas_max_n = 12;
  int property_draws = 1000;   // criterion 8
  int threads = 1;
  std::uint64_t seed = 20190517;
  bool inject_mutation = false;  // corrupt one certificate before checking

  static AcceptanceBudget full() { return {}; }
  static AcceptanceBudget reduced();
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceBudget& budget);
CriterionResult run_criterion(int id, const AcceptanceBudget& budget);

inline constexpr int kCriterionCount = 8;

// Recomputed independently at 30 digits: 5^0.1 + 2 (1/11)^0.1 - 3 * 2^-0.1.
inline constexpr double kNesbittCounterexampleLhs = 2.7482058274815634768;
inline constexpr double kNesbittCounterexampleRhs = 2.7990989746104222479;
inline constexpr double kNesbittCounterexampleGap = -0.050893147128858771119;

// n in {2,...,12} with P_{n,2} != 2 + L_n, determined by exhaustive count.
inline const std::vector<int> kLucasOutliers = {2};

}  // namespace cyclineq
