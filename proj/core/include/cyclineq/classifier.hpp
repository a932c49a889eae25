#pragma once

#include <vector>

#include "cyclineq/permutation.hpp"

namespace cyclineq {

// The exact set of exponents k for which
//   sum_i (x_i / x_{i+1})^k >= sum_i x_i / x_{sigma(i)}
// holds for every positive x: k >= d_plus or k <= -d_minus (closed).
struct ExponentVerdict {
  int d_plus = 0;
  int d_minus = 0;

  bool admits(double k) const noexcept { return k >= d_plus || k <= -d_minus; }
};

ExponentVerdict admissible_exponents(const Permutation& sigma);

bool holds(const Permutation& sigma, double k);

struct Violation {
  int index;               // 1-based i
  int required_threshold;  // forward (k >= 0) or backward (k < 0) displacement at i
};

// Indices whose displacement exceeds |k| on the branch selected by sign(k);
// empty exactly when holds(sigma, k).
std::vector<Violation> violating_indices(const Permutation& sigma, double k);

}  // namespace cyclineq
