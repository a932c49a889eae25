#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cyclineq/permutation.hpp"

namespace cyclineq {

enum class InequalityKind {
  MainExponent,     // sum (x_i/x_{i+1})^k >= sum x_i/x_{sigma(i)}
  CyclicShift,      // same with sigma(i) = i + p - 1
  ShapiroType,      // sum (x_i/(x_{i+1}+x_{i+2}))^k >= sum x_i/(x_{sigma(i)}+x_{sigma^2(i)})
  ShapiroExponent,  // sum (x_i/(x_{i+1}+x_{i+2}))^k >= n/2
  NesbittClassic,   // sum x_i/s_i >= n/(n-1), s_i = sum_{j != i} x_j
  NesbittExponent,  // sum (x_i/s_i)^k >= n/(n-1)^k
};

std::string_view to_string(InequalityKind kind) noexcept;
std::optional<InequalityKind> parse_inequality_kind(std::string_view name);

struct InequalityInstance {
  InequalityKind kind = InequalityKind::MainExponent;
  int n = 2;
  std::optional<Permutation> sigma;  // MainExponent, CyclicShift, ShapiroType
  double k = 1.0;                    // all kinds except NesbittClassic
  int p = 2;                         // CyclicShift only

  static InequalityInstance main_exponent(const Permutation& sigma, double k);
  static InequalityInstance cyclic_shift(int n, int p, double k);
  static InequalityInstance shapiro_type(const Permutation& sigma, double k);
  static InequalityInstance shapiro_exponent(int n, double k);
  static InequalityInstance nesbitt_classic(int n);
  static InequalityInstance nesbitt_exponent(int n, double k);
};

// One summand sign * (x_num / sum_{q in den} x_q)^exponent. Denominator indices
// are 0-based and may repeat (n = 2 wraps i+2 back onto i).
struct PowerTerm {
  double sign;
  int num;
  std::vector<int> den;
  double exponent;
};

// gap = sum of terms + constant; left-hand terms carry sign +1.
struct TermExpansion {
  std::vector<PowerTerm> lhs;
  std::vector<PowerTerm> rhs;
  double rhs_constant = 0;
};

TermExpansion expand(const InequalityInstance& instance);

struct GapReport {
  InequalityInstance instance;
  std::vector<double> x;
  double lhs = 0;
  double rhs = 0;
  double gap = 0;
};

// Throws NonPositiveInput / DimensionMismatch.
GapReport evaluate(const InequalityInstance& instance, std::span<const double> x);

// Evaluation directly in log coordinates y_i = log x_i, in double or long double.
// gap is a compensated sum over all terms, so equal terms on both sides
// cancel even when they are large.
template <typename Real>
struct SideValues {
  Real lhs;
  Real rhs;
  Real gap;
};

SideValues<double> evaluate_log(const TermExpansion& terms, std::span<const double> y);
SideValues<long double> evaluate_log_extended(const TermExpansion& terms, std::span<const double> y);

// d gap / d y_m for every m.
std::vector<double> gap_gradient_log(const TermExpansion& terms, std::span<const double> y);

}  // namespace cyclineq
