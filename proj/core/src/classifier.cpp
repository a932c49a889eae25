#include "cyclineq/classifier.hpp"

namespace cyclineq {

ExponentVerdict admissible_exponents(const Permutation& sigma) {
  return {max_forward_displacement(sigma), max_backward_displacement(sigma)};
}

bool holds(const Permutation& sigma, double k) {
  return admissible_exponents(sigma).admits(k);
}

std::vector<Violation> violating_indices(const Permutation& sigma, double k) {
  std::vector<Violation> out;
  for (int i = 1; i <= sigma.size(); ++i) {
    const int d = k >= 0 ? forward_displacement(sigma, i) : backward_displacement(sigma, i);
    const double bound = k >= 0 ? k : -k;
    if (d > bound) out.push_back({i, d});
  }
  return out;
}

}  // namespace cyclineq
