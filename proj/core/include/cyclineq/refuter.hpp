#pragma once

#include <string>
#include <vector>

#include "cyclineq/inequality.hpp"
#include "cyclineq/permutation.hpp"

namespace cyclineq {

// A positive vector at which the inequality is violated; gap < 0 always.
struct CounterexampleReport {
  InequalityInstance instance;
  std::vector<double> x;
  double lhs = 0;
  double rhs = 0;
  double gap = 0;
  std::string construction;  // which closed-form family produced x
  bool extended_precision = false;
  std::string note;          // set when a precondition of the construction was checked at runtime
};

// Geometric vector with ratio (n+1)^{1/R} descending away from i0 - 1, where
// i0 maximizes the forward displacement d and R = d - k > 0.
// DomainError(NotRefutable) when the inequality holds; OutOfDomain for k < 0.
CounterexampleReport refute_main_positive_k(const Permutation& sigma, double k);

// Mirror image for k < 0: ascending away from i0 + 1, backward displacement.
CounterexampleReport refute_main_negative_k(const Permutation& sigma, double k);

// Dispatches on the sign of k.
CounterexampleReport refute_main(const Permutation& sigma, double k);

enum class ShapiroVerdict { Holds, Fails, Undetermined };

std::string_view to_string(ShapiroVerdict v) noexcept;

struct ShapiroPrediction {
  ShapiroVerdict verdict = ShapiroVerdict::Holds;
  bool constant_rhs = false;  // sigma is a product of disjoint transpositions
  std::string reason;
};

// Whether the original Shapiro inequality holds in dimension n: even n <= 12,
// odd n <= 23.
bool shapiro_holds_in_dimension(int n) noexcept;

// Case analysis of the Shapiro-type inequality for k >= 0.
ShapiroPrediction predict_shapiro_type(const Permutation& sigma, double k);

CounterexampleReport refute_shapiro_type(const Permutation& sigma, double k);

// The fixed vector (1, 0.1, 0.1) at k = 0.1 against RHS 3 / 2^k.
CounterexampleReport refute_nesbitt_exponent();

}  // namespace cyclineq
