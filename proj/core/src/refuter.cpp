#include "cyclineq/refuter.hpp"

#include <algorithm>
#include <cmath>

#include "cyclineq/classifier.hpp"
#include "cyclineq/errors.hpp"

namespace cyclineq {

namespace {

constexpr double kConfirm = 1e-9;

// Evaluates in log coordinates, retrying in long double when the double
// result is too close to zero (or not finite) to trust its sign.
bool confirm(CounterexampleReport& report, std::span<const double> y) {
  const auto terms = expand(report.instance);
  const auto values = evaluate_log(terms, y);
  const double gap = values.gap;
  if (std::isfinite(gap) && std::abs(gap) >= kConfirm) {
    report.lhs = values.lhs;
    report.rhs = values.rhs;
    report.gap = gap;
    report.extended_precision = false;
    return gap < 0;
  }
  const auto wide = evaluate_log_extended(terms, y);
  const long double wide_gap = wide.gap;
  report.lhs = static_cast<double>(wide.lhs);
  report.rhs = static_cast<double>(wide.rhs);
  report.gap = static_cast<double>(wide_gap);
  report.extended_precision = true;
  return std::isfinite(static_cast<double>(wide_gap)) && wide_gap < 0;
}

std::vector<double> exp_all(std::span<const double> y) {
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    x[i] = std::exp(y[i]);
    if (!std::isfinite(x[i]) || x[i] <= 0) {
      throw DomainError(ErrorCode::OutOfDomain,
                        "counterexample vector leaves the double range; k is too close to its threshold");
    }
  }
  return x;
}

// Index with the largest required threshold, smallest index on ties.
Violation widest(const std::vector<Violation>& violations) {
  Violation best = violations.front();
  for (const auto& v : violations) {
    if (v.required_threshold > best.required_threshold) best = v;
  }
  return best;
}

CounterexampleReport finish(CounterexampleReport report, std::span<const double> y) {
  report.x = exp_all(y);
  if (!confirm(report, y)) {
    throw DomainError(ErrorCode::Internal, "constructed vector does not violate the inequality");
  }
  return report;
}

}  // namespace

CounterexampleReport refute_main_positive_k(const Permutation& sigma, double k) {
  if (!(k >= 0)) throw DomainError(ErrorCode::OutOfDomain, "positive-branch refuter needs k >= 0");
  const auto violations = violating_indices(sigma, k);
  if (violations.empty()) {
    throw DomainError(ErrorCode::NotRefutable, "inequality holds for this sigma and k");
  }
  const int n = sigma.size();
  const Violation i0 = widest(violations);
  const double margin = i0.required_threshold - k;
  const double log_ratio = std::log(n + 1.0) / margin;

  // x_{i0-1} = 2, x_{i0-1-t} = 2 q^t: every a_j equals q except a_{i0-1}.
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    y[static_cast<std::size_t>(wrap_index(i0.index - 1 - t, n) - 1)] = std::log(2.0) + t * log_ratio;
  }
  CounterexampleReport report;
  report.instance = InequalityInstance::main_exponent(sigma, k);
  report.construction = "geometric ratio (n+1)^(1/R) descending from x_{i0-1}, i0 = " +
                        std::to_string(i0.index) + ", R = " + std::to_string(margin);
  return finish(std::move(report), y);
}

CounterexampleReport refute_main_negative_k(const Permutation& sigma, double k) {
  if (!(k < 0)) throw DomainError(ErrorCode::OutOfDomain, "negative-branch refuter needs k < 0");
  const auto violations = violating_indices(sigma, k);
  if (violations.empty()) {
    throw DomainError(ErrorCode::NotRefutable, "inequality holds for this sigma and k");
  }
  const int n = sigma.size();
  const Violation i0 = widest(violations);
  const double margin = i0.required_threshold + k;
  const double log_ratio = std::log(n + 1.0) / margin;

  // x_{i0+1} = 2, x_{i0+1+t} = 2 q^t: every b_j equals q except b_{i0}.
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    y[static_cast<std::size_t>(wrap_index(i0.index + 1 + t, n) - 1)] = std::log(2.0) + t * log_ratio;
  }
  CounterexampleReport report;
  report.instance = InequalityInstance::main_exponent(sigma, k);
  report.construction = "geometric ratio (n+1)^(1/R) ascending from x_{i0+1}, i0 = " +
                        std::to_string(i0.index) + ", R = " + std::to_string(margin);
  return finish(std::move(report), y);
}

CounterexampleReport refute_main(const Permutation& sigma, double k) {
  return k >= 0 ? refute_main_positive_k(sigma, k) : refute_main_negative_k(sigma, k);
}

std::string_view to_string(ShapiroVerdict v) noexcept {
  switch (v) {
    case ShapiroVerdict::Holds: return "holds";
    case ShapiroVerdict::Fails: return "fails";
    case ShapiroVerdict::Undetermined: return "undetermined";
  }
  return "unknown";
}

bool shapiro_holds_in_dimension(int n) noexcept {
  return n % 2 == 0 ? n <= 12 : n <= 23;
}

namespace {

bool adjacent(int a, int b, int n) {
  const int d = ((a - b) % n + n) % n;
  return d == 1 || d == n - 1;
}

// Smallest i with i, sigma(i), sigma^2(i) pairwise distinct and sigma(i),
// sigma^2(i) not cyclic neighbours; 0 if none.
int separated_pair_index(const Permutation& sigma) {
  const int n = sigma.size();
  for (int i = 1; i <= n; ++i) {
    const int s1 = sigma(i);
    const int s2 = sigma(s1);
    if (s1 != i && s2 != i && !adjacent(s1, s2, n)) return i;
  }
  return 0;
}

// Smallest i lying on a cycle of length >= 3; 0 if sigma is an involution.
int long_cycle_index(const Permutation& sigma) {
  for (int i = 1; i <= sigma.size(); ++i) {
    if (sigma(sigma(i)) != i) return i;
  }
  return 0;
}

}  // namespace

ShapiroPrediction predict_shapiro_type(const Permutation& sigma, double k) {
  if (!(k >= 0) || !std::isfinite(k)) {
    throw DomainError(ErrorCode::OutOfDomain, "Shapiro-type case analysis covers k >= 0 only");
  }
  const int n = sigma.size();
  ShapiroPrediction out;
  out.constant_rhs = sigma.is_involution();
  if (k > 1) {
    out.verdict = ShapiroVerdict::Fails;
    out.reason = "k > 1: the all-ones vector gives LHS n/2^k < RHS n/2";
    return out;
  }
  if (out.constant_rhs) {
    if (shapiro_holds_in_dimension(n)) {
      out.verdict = ShapiroVerdict::Holds;
      out.reason = "RHS is n/2 and k <= 1: bounded below by the Shapiro sum, which holds in this dimension";
    } else if (k == 1) {
      out.verdict = ShapiroVerdict::Fails;
      out.reason = "RHS is n/2, k = 1: the Shapiro inequality fails in this dimension";
    } else {
      out.verdict = ShapiroVerdict::Undetermined;
      out.reason = "RHS is n/2, k < 1, Shapiro fails in this dimension: fails for k close enough to 1 only";
    }
    return out;
  }
  if (k < 1) {
    out.verdict = ShapiroVerdict::Fails;
    out.reason = "k < 1: one large coordinate on a cycle of length >= 3 makes the RHS grow faster";
    return out;
  }
  if (n == 3) {
    out.verdict = ShapiroVerdict::Holds;
    out.reason = "n = 3, sigma a 3-cycle, k = 1: both sides coincide";
  } else if (sigma == Permutation::shift(n, 1)) {
    out.verdict = ShapiroVerdict::Holds;
    out.reason = "sigma(i) = i + 1, k = 1: both sides coincide";
  } else if (separated_pair_index(sigma) != 0) {
    out.verdict = ShapiroVerdict::Fails;
    out.reason = "k = 1: sigma(i), sigma^2(i) non-adjacent; shrinking both makes one RHS term unbounded";
  } else {
    out.verdict = ShapiroVerdict::Fails;
    out.reason = "k = 1, sigma(i) = i - 1: a descending geometric vector separates the sides";
  }
  return out;
}

CounterexampleReport refute_shapiro_type(const Permutation& sigma, double k) {
  const ShapiroPrediction prediction = predict_shapiro_type(sigma, k);
  const int n = sigma.size();
  if (prediction.verdict != ShapiroVerdict::Fails) {
    throw DomainError(ErrorCode::NotRefutable, prediction.reason);
  }

  CounterexampleReport report;
  report.instance = InequalityInstance::shapiro_type(sigma, k);
  std::vector<double> y(static_cast<std::size_t>(n), 0.0);

  if (k > 1) {
    report.construction = "all ones";
    return finish(std::move(report), y);
  }
  if (prediction.constant_rhs) {
    throw DomainError(ErrorCode::NotRefutable,
                      "no closed-form counterexample to the Shapiro inequality in dimension " +
                          std::to_string(n));
  }

  // Parameter search: scale one or two coordinates geometrically until the
  // violation clears the confirmation threshold, capped at 2^60.
  auto scan = [&](auto&& place, double start, double factor, const std::string& name) {
    const double cap = std::ldexp(1.0, 60);
    for (double t = start; t <= cap && t >= 1 / cap; t *= factor) {
      std::fill(y.begin(), y.end(), 0.0);
      place(std::log(t));
      CounterexampleReport trial = report;
      trial.construction = name + ", parameter " + std::to_string(t);
      trial.x = exp_all(y);
      if (confirm(trial, y) && (trial.gap < -kConfirm || trial.extended_precision)) return trial;
    }
    throw DomainError(ErrorCode::Internal, "parameter search exceeded 2^60 for " + name);
  };

  if (k < 1) {
    const int i = long_cycle_index(sigma);
    return scan([&](double log_t) { y[static_cast<std::size_t>(i - 1)] = log_t; }, 10.0, 2.0,
                "x_" + std::to_string(i) + " large, others 1");
  }
  if (const int i = separated_pair_index(sigma); i != 0) {
    const int s1 = sigma(i);
    const int s2 = sigma(s1);
    return scan(
        [&](double log_t) {
          y[static_cast<std::size_t>(s1 - 1)] = log_t;
          y[static_cast<std::size_t>(s2 - 1)] = log_t;
        },
        0.1, 0.5, "x_" + std::to_string(s1) + " = x_" + std::to_string(s2) + " = r small, others 1");
  }
  report.note = "sigma(i), sigma^2(i) are adjacent for every i; used the reverse-shift construction";
  return scan(
      [&](double log_t) {
        for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = -i * log_t;
      },
      10.0, 2.0, "x_i = t^-(i-1)");
}

CounterexampleReport refute_nesbitt_exponent() {
  CounterexampleReport report;
  report.instance = InequalityInstance::nesbitt_exponent(3, 0.1);
  report.construction = "x = (1, 0.1, 0.1), k = 0.1";
  const std::vector<double> y = {0.0, std::log(0.1), std::log(0.1)};
  report.x = {1.0, 0.1, 0.1};
  if (!confirm(report, y)) {
    throw DomainError(ErrorCode::Internal, "Nesbitt counterexample did not confirm");
  }
  return report;
}

}  // namespace cyclineq
