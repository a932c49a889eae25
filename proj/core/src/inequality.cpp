#include "cyclineq/inequality.hpp"

#include <cmath>
#include <string>

#include "cyclineq/errors.hpp"

namespace cyclineq {

std::string_view to_string(InequalityKind kind) noexcept {
  switch (kind) {
    case InequalityKind::MainExponent: return "main";
    case InequalityKind::CyclicShift: return "shift";
    case InequalityKind::ShapiroType: return "shapiro";
    case InequalityKind::ShapiroExponent: return "shapiro-exp";
    case InequalityKind::NesbittClassic: return "nesbitt-classic";
    case InequalityKind::NesbittExponent: return "nesbitt";
  }
  return "unknown";
}

std::optional<InequalityKind> parse_inequality_kind(std::string_view name) {
  for (auto kind : {InequalityKind::MainExponent, InequalityKind::CyclicShift,
                    InequalityKind::ShapiroType, InequalityKind::ShapiroExponent,
                    InequalityKind::NesbittClassic, InequalityKind::NesbittExponent}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

namespace {

void require_dimension(int n) {
  if (n <= 1) throw DomainError(ErrorCode::BadDimension, "need n > 1, got " + std::to_string(n));
}

void require_finite(double k) {
  if (!std::isfinite(k)) throw DomainError(ErrorCode::OutOfDomain, "exponent must be finite");
}

}  // namespace

InequalityInstance InequalityInstance::main_exponent(const Permutation& sigma, double k) {
  require_finite(k);
  return {InequalityKind::MainExponent, sigma.size(), sigma, k, 2};
}

InequalityInstance InequalityInstance::cyclic_shift(int n, int p, double k) {
  require_finite(k);
  return {InequalityKind::CyclicShift, n, Permutation::shift(n, p - 1), k, p};
}

InequalityInstance InequalityInstance::shapiro_type(const Permutation& sigma, double k) {
  require_finite(k);
  return {InequalityKind::ShapiroType, sigma.size(), sigma, k, 2};
}

InequalityInstance InequalityInstance::shapiro_exponent(int n, double k) {
  require_dimension(n);
  require_finite(k);
  return {InequalityKind::ShapiroExponent, n, std::nullopt, k, 2};
}

InequalityInstance InequalityInstance::nesbitt_classic(int n) {
  require_dimension(n);
  return {InequalityKind::NesbittClassic, n, std::nullopt, 1.0, 2};
}

InequalityInstance InequalityInstance::nesbitt_exponent(int n, double k) {
  require_dimension(n);
  require_finite(k);
  return {InequalityKind::NesbittExponent, n, std::nullopt, k, 2};
}

TermExpansion expand(const InequalityInstance& instance) {
  const int n = instance.n;
  const double k = instance.k;
  auto next = [n](int i, int step) { return (i + step) % n; };
  TermExpansion out;

  auto shapiro_lhs = [&] {
    for (int i = 0; i < n; ++i) out.lhs.push_back({1.0, i, {next(i, 1), next(i, 2)}, k});
  };
  auto nesbitt_lhs = [&](double exponent) {
    for (int i = 0; i < n; ++i) {
      std::vector<int> others;
      for (int j = 0; j < n; ++j) {
        if (j != i) others.push_back(j);
      }
      out.lhs.push_back({1.0, i, std::move(others), exponent});
    }
  };

  switch (instance.kind) {
    case InequalityKind::MainExponent:
    case InequalityKind::CyclicShift: {
      const Permutation& sigma = instance.sigma.value();
      for (int i = 0; i < n; ++i) out.lhs.push_back({1.0, i, {next(i, 1)}, k});
      for (int i = 0; i < n; ++i) out.rhs.push_back({-1.0, i, {sigma(i + 1) - 1}, 1.0});
      break;
    }
    case InequalityKind::ShapiroType: {
      const Permutation& sigma = instance.sigma.value();
      shapiro_lhs();
      for (int i = 0; i < n; ++i) {
        const int s1 = sigma(i + 1);
        const int s2 = sigma(s1);
        out.rhs.push_back({-1.0, i, {s1 - 1, s2 - 1}, 1.0});
      }
      break;
    }
    case InequalityKind::ShapiroExponent:
      shapiro_lhs();
      out.rhs_constant = n / 2.0;
      break;
    case InequalityKind::NesbittClassic:
      nesbitt_lhs(1.0);
      out.rhs_constant = n / (n - 1.0);
      break;
    case InequalityKind::NesbittExponent:
      nesbitt_lhs(k);
      out.rhs_constant = n / std::pow(n - 1.0, k);
      break;
  }
  return out;
}

namespace {

template <typename Real>
Real log_denominator(const PowerTerm& term, std::span<const double> y) {
  // log-sum-exp over the denominator entries
  Real top = static_cast<Real>(y[static_cast<std::size_t>(term.den.front())]);
  for (int q : term.den) top = std::max(top, static_cast<Real>(y[static_cast<std::size_t>(q)]));
  Real acc = 0;
  for (int q : term.den) acc += std::exp(static_cast<Real>(y[static_cast<std::size_t>(q)]) - top);
  return top + std::log(acc);
}

template <typename Real>
Real term_value(const PowerTerm& term, std::span<const double> y) {
  const Real log_ratio = static_cast<Real>(y[static_cast<std::size_t>(term.num)]) - log_denominator<Real>(term, y);
  return std::exp(static_cast<Real>(term.exponent) * log_ratio);
}

// Neumaier summation.
template <typename Real>
class CompensatedSum {
 public:
  void add(Real v) {
    const Real t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const { return sum_ + carry_; }

 private:
  Real sum_ = 0;
  Real carry_ = 0;
};

template <typename Real>
SideValues<Real> sides(const TermExpansion& terms, std::span<const double> y) {
  CompensatedSum<Real> lhs, rhs, gap;
  rhs.add(static_cast<Real>(terms.rhs_constant));
  gap.add(-static_cast<Real>(terms.rhs_constant));
  for (const auto& t : terms.lhs) {
    const Real v = term_value<Real>(t, y);
    lhs.add(v);
    gap.add(v);
  }
  for (const auto& t : terms.rhs) {
    const Real v = term_value<Real>(t, y);
    rhs.add(v);
    gap.add(-v);
  }
  return {lhs.value(), rhs.value(), gap.value()};
}

}  // namespace

SideValues<double> evaluate_log(const TermExpansion& terms, std::span<const double> y) {
  return sides<double>(terms, y);
}

SideValues<long double> evaluate_log_extended(const TermExpansion& terms, std::span<const double> y) {
  return sides<long double>(terms, y);
}

std::vector<double> gap_gradient_log(const TermExpansion& terms, std::span<const double> y) {
  std::vector<double> grad(y.size(), 0.0);
  auto accumulate = [&](const PowerTerm& t) {
    const double value = term_value<double>(t, y);
    const double log_den = log_denominator<double>(t, y);
    const double scale = t.sign * t.exponent * value;
    grad[static_cast<std::size_t>(t.num)] += scale;
    for (int q : t.den) {
      grad[static_cast<std::size_t>(q)] -= scale * std::exp(y[static_cast<std::size_t>(q)] - log_den);
    }
  };
  for (const auto& t : terms.lhs) accumulate(t);
  for (const auto& t : terms.rhs) accumulate(t);
  return grad;
}

GapReport evaluate(const InequalityInstance& instance, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(instance.n)) {
    throw DomainError(ErrorCode::DimensionMismatch,
                      "expected " + std::to_string(instance.n) + " values, got " + std::to_string(x.size()));
  }
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !std::isfinite(x[i])) {
      throw DomainError(ErrorCode::NonPositiveInput, "x_" + std::to_string(i + 1) + " is not a positive finite number");
    }
    y[i] = std::log(x[i]);
  }
  const auto terms = expand(instance);
  const auto values = evaluate_log(terms, y);
  GapReport report{instance, {x.begin(), x.end()}, values.lhs, values.rhs, values.gap};
  return report;
}

}  // namespace cyclineq
