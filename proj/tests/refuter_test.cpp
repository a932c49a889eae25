#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cyclineq/classifier.hpp"
#include "cyclineq/errors.hpp"
#include "cyclineq/inequality.hpp"
#include "cyclineq/refuter.hpp"

using namespace cyclineq;

namespace {

Permutation P(std::vector<int> images) { return Permutation(images); }

// Plain evaluation written out independently of the library's term expansion.
double main_gap(const Permutation& sigma, double k, const std::vector<double>& x) {
  const int n = sigma.size();
  long double lhs = 0, rhs = 0;
  for (int i = 0; i < n; ++i) {
    lhs += std::pow(static_cast<long double>(x[static_cast<std::size_t>(i)]) / x[static_cast<std::size_t>((i + 1) % n)], k);
    rhs += static_cast<long double>(x[static_cast<std::size_t>(i)]) / x[static_cast<std::size_t>(sigma(i + 1) - 1)];
  }
  return static_cast<double>(lhs - rhs);
}

double shapiro_type_gap(const Permutation& sigma, double k, const std::vector<double>& x) {
  const int n = sigma.size();
  const auto sq = sigma.squared();
  long double lhs = 0, rhs = 0;
  for (int i = 0; i < n; ++i) {
    const auto xi = static_cast<long double>(x[static_cast<std::size_t>(i)]);
    lhs += std::pow(xi / (x[static_cast<std::size_t>((i + 1) % n)] + x[static_cast<std::size_t>((i + 2) % n)]), k);
    rhs += xi / (x[static_cast<std::size_t>(sigma(i + 1) - 1)] + x[static_cast<std::size_t>(sq(i + 1) - 1)]);
  }
  return static_cast<double>(lhs - rhs);
}

void expect_not_refutable(auto&& fn) {
  try {
    fn();
    FAIL() << "expected NotRefutable";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotRefutable);
  }
}

}  // namespace

TEST(RefuteMain, PositiveExamples) {
  const auto a = refute_main_positive_k(Permutation::shift(4, 2), 1.0);
  EXPECT_LT(a.gap, 0);
  EXPECT_LT(main_gap(Permutation::shift(4, 2), 1.0, a.x), 0);

  const auto sigma = P({2, 1, 3, 4});
  const auto b = refute_main_positive_k(sigma, 2.5);
  EXPECT_LT(b.gap, 0);
  EXPECT_LT(main_gap(sigma, 2.5, b.x), 0);
  // R = 0.5 so consecutive ratios are 5^2 = 25 along the geometric run
  bool saw_ratio = false;
  for (int i = 0; i < 4; ++i) {
    const double r = b.x[static_cast<std::size_t>(i)] / b.x[static_cast<std::size_t>((i + 1) % 4)];
    saw_ratio = saw_ratio || std::abs(r - 25.0) < 1e-9 || std::abs(r - 1.0 / 25.0) < 1e-9;
  }
  EXPECT_TRUE(saw_ratio);

  expect_not_refutable([] { refute_main_positive_k(Permutation::identity(4), 3.0); });
  expect_not_refutable([] { refute_main_positive_k(Permutation::identity(4), 0.0); });
}

TEST(RefuteMain, NegativeExamples) {
  const auto a = refute_main_negative_k(Permutation::shift(4, 1), -1.0);
  EXPECT_LT(main_gap(Permutation::shift(4, 1), -1.0, a.x), 0);
  const auto sigma = P({2, 1, 3, 4});
  const auto b = refute_main_negative_k(sigma, -2.0);
  EXPECT_LT(main_gap(sigma, -2.0, b.x), 0);
  expect_not_refutable([] { refute_main_negative_k(Permutation::identity(4), -5.0); });
  EXPECT_LT(refute_main(sigma, -2.9).gap, -1e-9);
}

// Every failing (sigma, k) on the half-integer grid is refuted (n <= 6).
TEST(RefuteMain, ExhaustiveAgainstClassifier) {
  long long refuted = 0;
  for (int n = 2; n <= 6; ++n) {
    for_each_permutation(n, [&](const Permutation& sigma) {
      for (int twice_k = -2 * n; twice_k <= 2 * n; ++twice_k) {
        const double k = twice_k / 2.0;
        if (holds(sigma, k)) {
          expect_not_refutable([&] { refute_main(sigma, k); });
          continue;
        }
        const auto report = refute_main(sigma, k);
        ++refuted;
        ASSERT_LT(report.gap, 0) << "n=" << n << " k=" << k;
        const auto check = evaluate(report.instance, report.x);
        ASSERT_LT(check.gap, 0) << "n=" << n << " k=" << k;
      }
    });
  }
  EXPECT_GT(refuted, 1000);
}

TEST(RefuteMain, ScaleInvariance) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> logc(std::log(1e-3), std::log(1e3));
  for (int n = 3; n <= 5; ++n) {
    for_each_permutation(n, [&](const Permutation& sigma) {
      const double k = 0.5;
      if (holds(sigma, k)) return;
      const auto report = refute_main(sigma, k);
      auto scaled = report.x;
      const double c = std::exp(logc(rng));
      for (auto& v : scaled) v *= c;
      const double g = evaluate(report.instance, scaled).gap;
      EXPECT_NEAR(g, report.gap, 1e-12 * std::max(1.0, std::abs(report.gap)));
    });
  }
}

TEST(RefuteShapiro, Examples) {
  const auto cycle = Permutation::shift(3, 1);
  const auto a = refute_shapiro_type(cycle, 2.0);
  EXPECT_EQ(a.x, (std::vector<double>{1, 1, 1}));
  EXPECT_NEAR(a.lhs, 0.75, 1e-12);
  EXPECT_NEAR(a.rhs, 1.5, 1e-12);

  const auto b = refute_shapiro_type(Permutation::identity(4), 1.5);
  EXPECT_NEAR(b.lhs, 4 * std::pow(2.0, -1.5), 1e-12);
  EXPECT_NEAR(b.rhs, 2.0, 1e-12);
  EXPECT_NEAR(b.gap, 4 * std::pow(2.0, -1.5) - 2, 1e-9);

  const auto c = refute_shapiro_type(cycle, 0.5);
  EXPECT_GT(c.x[0], 1.0);
  EXPECT_EQ(c.x[1], 1.0);
  EXPECT_EQ(c.x[2], 1.0);
  EXPECT_LT(c.gap, 0);
  EXPECT_LT(shapiro_type_gap(cycle, 0.5, c.x), 0);
  EXPECT_LT(c.lhs, std::pow(c.x[0] / 2, 0.5) + 2);
  EXPECT_GT(c.rhs, c.x[0] / 2);
}

TEST(RefuteShapiro, NotRefutableCases) {
  // n = 2, k <= 1: t^k + (1 - t)^k >= 1
  expect_not_refutable([] { refute_shapiro_type(Permutation::identity(2), 1.0); });
  expect_not_refutable([] { refute_shapiro_type(P({2, 1}), 0.5); });
  // constant RHS n/2 where the Shapiro inequality holds
  expect_not_refutable([] { refute_shapiro_type(Permutation::identity(4), 1.0); });
  expect_not_refutable([] { refute_shapiro_type(P({2, 1, 4, 3}), 0.3); });
  expect_not_refutable([] { refute_shapiro_type(Permutation::identity(5), 0.0); });
  // shift by one at k = 1 is equality
  expect_not_refutable([] { refute_shapiro_type(Permutation::shift(5, 1), 1.0); });
  expect_not_refutable([] { refute_shapiro_type(Permutation::shift(3, 1), 1.0); });
}

TEST(RefuteShapiro, PredictionAgreesWithConstruction) {
  for (int n = 2; n <= 5; ++n) {
    for_each_permutation(n, [&](const Permutation& sigma) {
      for (double k : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        const auto pred = predict_shapiro_type(sigma, k);
        EXPECT_EQ(pred.constant_rhs, sigma.is_involution());
        EXPECT_NE(pred.verdict, ShapiroVerdict::Undetermined);
        if (pred.verdict == ShapiroVerdict::Holds) {
          expect_not_refutable([&] { refute_shapiro_type(sigma, k); });
        } else {
          const auto report = refute_shapiro_type(sigma, k);
          EXPECT_LT(shapiro_type_gap(sigma, k, report.x), 0) << "n=" << n << " k=" << k;
          EXPECT_LT(evaluate(report.instance, report.x).gap, 0);
        }
      }
    });
  }
}

TEST(RefuteShapiro, DimensionTable) {
  for (int n : {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 17, 19, 21, 23}) EXPECT_TRUE(shapiro_holds_in_dimension(n)) << n;
  for (int n : {14, 16, 25, 26}) EXPECT_FALSE(shapiro_holds_in_dimension(n)) << n;
}

TEST(RefuteNesbitt, PinnedCounterexample) {
  const auto r = refute_nesbitt_exponent();
  EXPECT_EQ(r.x, (std::vector<double>{1.0, 0.1, 0.1}));
  // 5^0.1 + 2 (1/11)^0.1 and 3 2^-0.1, recomputed at 30 digits
  EXPECT_NEAR(r.lhs, 2.7482058274815634768, 1e-12);
  EXPECT_NEAR(r.rhs, 2.7990989746104222479, 1e-12);
  EXPECT_NEAR(r.gap, -0.050893147128858771119, 1e-12);
}

TEST(RefuteNesbitt, SanityChecks) {
  const std::vector<double> x = {1.0, 0.1, 0.1};
  const auto classic = evaluate(InequalityInstance::nesbitt_classic(3), x);
  EXPECT_NEAR(classic.lhs, 5 + 2.0 / 11, 1e-12);
  EXPECT_GE(classic.gap, 0);
  const std::vector<double> ones = {1, 1, 1};
  const auto eq = evaluate(InequalityInstance::nesbitt_exponent(3, 0.1), ones);
  EXPECT_NEAR(eq.lhs, 3 * std::pow(2.0, -0.1), 1e-14);
  EXPECT_NEAR(eq.gap, 0, 1e-14);
}
