#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "cyclineq/errors.hpp"
#include "cyclineq/inequality.hpp"
#include "cyclineq/numeric_search.hpp"

using namespace cyclineq;

namespace {

Permutation P(std::vector<int> images) { return Permutation(images); }

SearchConfig small_config() {
  SearchConfig c;
  c.restarts = 8;
  c.max_iters = 300;
  c.grid_points_per_dim = 13;
  return c;
}

std::vector<InequalityInstance> sample_instances() {
  return {
      InequalityInstance::main_exponent(P({2, 1, 3, 4}), 2.0),
      InequalityInstance::main_exponent(Permutation::shift(4, 2), -1.0),
      InequalityInstance::cyclic_shift(5, 3, 1.5),
      InequalityInstance::shapiro_type(Permutation::shift(4, 1), 0.7),
      InequalityInstance::shapiro_exponent(5, 0.8),
      InequalityInstance::nesbitt_classic(4),
      InequalityInstance::nesbitt_exponent(3, 0.1),
  };
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Evaluate, Examples) {
  const std::vector<double> x = {3, 1, 4};
  const auto r = evaluate(InequalityInstance::main_exponent(Permutation::identity(3), 0.0), x);
  EXPECT_DOUBLE_EQ(r.rhs, 3);
  EXPECT_DOUBLE_EQ(r.lhs, 3);
  EXPECT_DOUBLE_EQ(r.gap, 0);

  for (const auto& sigma : {Permutation::identity(2), P({2, 1})}) {
    const std::vector<double> y = {0.3, 2.9};
    EXPECT_NEAR(evaluate(InequalityInstance::shapiro_type(sigma, 1.7), y).rhs, 1.0, 1e-15);
  }
  const std::vector<double> ones = {1, 1, 1};
  const auto s = evaluate(InequalityInstance::shapiro_exponent(3, 1.0), ones);
  EXPECT_DOUBLE_EQ(s.lhs, 1.5);
  EXPECT_DOUBLE_EQ(s.rhs, 1.5);

  // p = 3 is sigma(i) = i + 2
  const std::vector<double> z = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(evaluate(InequalityInstance::cyclic_shift(4, 3, 1.0), z).rhs, 1.0 / 3 + 2.0 / 4 + 3.0 / 1 + 4.0 / 2);
}

TEST(Evaluate, Errors) {
  const auto inst = InequalityInstance::main_exponent(Permutation::identity(3), 1.0);
  const std::vector<double> neg = {1, -1, 1};
  const std::vector<double> zero = {1, 0, 1};
  const std::vector<double> short_x = {1, 1};
  for (const auto* x : {&neg, &zero}) {
    try {
      evaluate(inst, *x);
      FAIL();
    } catch (const DomainError& e) {
      EXPECT_EQ(e.code(), ErrorCode::NonPositiveInput);
    }
  }
  try {
    evaluate(inst, short_x);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(MinimizeGap, Examples) {
  const auto cfg = small_config();
  const auto am_gm = minimize_gap(InequalityInstance::main_exponent(Permutation::identity(4), 1.0), cfg);
  EXPECT_NEAR(am_gm.gap, 0, 1e-9);

  const auto shapiro3 = minimize_gap(InequalityInstance::shapiro_exponent(3, 1.0), cfg);
  EXPECT_NEAR(shapiro3.gap, 0, 1e-9);

  const auto two = minimize_gap(InequalityInstance::shapiro_type(Permutation::identity(2), 2.0), cfg);
  EXPECT_NEAR(two.gap, -0.5, 1e-9);
  EXPECT_NEAR(two.x[0] / (two.x[0] + two.x[1]), 0.5, 1e-4);

  const auto nes = minimize_gap(InequalityInstance::nesbitt_exponent(3, 0.1), cfg);
  EXPECT_LT(nes.gap, -0.05);
}

TEST(MinimizeGap, TwoDimensionalMinimumMatchesCalculus) {
  const auto cfg = small_config();
  for (double k : {1.0, 1.5, 2.0, 3.0}) {
    const auto r = minimize_gap(InequalityInstance::shapiro_type(P({2, 1}), k), cfg);
    EXPECT_NEAR(r.gap, std::pow(2.0, 1 - k) - 1, 1e-9) << k;
  }
}

TEST(GridOracle, Examples) {
  SearchConfig cfg;
  cfg.grid_points_per_dim = 21;
  const auto held = grid_oracle(InequalityInstance::main_exponent(Permutation::shift(3, 1), 1.0), cfg);
  EXPECT_GE(held.gap, -1e-12);
  EXPECT_NEAR(held.gap, 0, 1e-12);

  cfg.grid_points_per_dim = 13;
  EXPECT_LT(grid_oracle(InequalityInstance::main_exponent(Permutation::shift(4, 2), 1.0), cfg).gap, 0);

  const auto nes = grid_oracle(InequalityInstance::nesbitt_exponent(3, 0.1), cfg);
  // (1, 0.1, 0.1) lies on the 13-point grid
  EXPECT_LE(nes.gap, -0.0508931471288588 + 1e-12);
}

TEST(GridOracle, BudgetExceeded) {
  SearchConfig cfg;
  cfg.grid_points_per_dim = 50;
  cfg.grid_budget = 1000;
  try {
    grid_oracle(InequalityInstance::main_exponent(Permutation::identity(5), 1.0), cfg);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Properties, Homogeneity) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> logu(-3, 3);
  std::uniform_real_distribution<double> logc(std::log(1e-3), std::log(1e3));
  for (const auto& inst : sample_instances()) {
    for (int t = 0; t < 50; ++t) {
      std::vector<double> x(static_cast<std::size_t>(inst.n));
      for (auto& v : x) v = std::exp(logu(rng));
      auto scaled = x;
      const double c = std::exp(logc(rng));
      for (auto& v : scaled) v *= c;
      const auto a = evaluate(inst, x);
      const auto b = evaluate(inst, scaled);
      EXPECT_NEAR(a.lhs, b.lhs, 1e-12 * std::abs(a.lhs));
      EXPECT_NEAR(a.rhs, b.rhs, 1e-12 * std::abs(a.rhs));
      EXPECT_NEAR(a.gap, b.gap, 1e-12 * std::max(std::abs(a.lhs), std::abs(a.rhs)));
    }
  }
}

TEST(Properties, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2, 2);
  for (const auto& inst : sample_instances()) {
    const auto terms = expand(inst);
    for (int t = 0; t < 20; ++t) {
      std::vector<double> y(static_cast<std::size_t>(inst.n));
      for (auto& v : y) v = u(rng);
      const auto g = gap_gradient_log(terms, y);
      ASSERT_EQ(g.size(), y.size());
      double norm = 0;
      for (double v : g) norm = std::max(norm, std::abs(v));
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double h = 1e-5;
        auto up = y, down = y;
        up[i] += h;
        down[i] -= h;
        const long double fd = (evaluate_log_extended(terms, up).gap - evaluate_log_extended(terms, down).gap) / (2.0L * h);
        EXPECT_LE(std::abs(static_cast<double>(fd) - g[i]), 1e-6 * std::max(1.0, norm));
      }
    }
  }
}

TEST(Properties, SearchNeverWorseThanGrid) {
  SearchConfig cfg = small_config();
  cfg.restarts = 20;
  for (const auto& inst : sample_instances()) {
    if (inst.n > 4) continue;
    const auto grid = grid_oracle(inst, cfg);
    const auto best = minimize_gap(inst, cfg);
    EXPECT_LE(best.gap, grid.gap + 1e-9) << to_string(inst.kind);
  }
}

TEST(Properties, DeterministicAcrossRunsAndThreads) {
  for (const auto& inst : sample_instances()) {
    SearchConfig cfg = small_config();
    const auto a = minimize_gap_detailed(inst, cfg);
    const auto b = minimize_gap_detailed(inst, cfg);
    cfg.threads = 3;
    const auto c = minimize_gap_detailed(inst, cfg);
    for (const auto* other : {&b, &c}) {
      EXPECT_TRUE(same_bits(a.best.gap, other->best.gap));
      EXPECT_EQ(a.best_restart, other->best_restart);
      ASSERT_EQ(a.best.x.size(), other->best.x.size());
      for (std::size_t i = 0; i < a.best.x.size(); ++i) EXPECT_TRUE(same_bits(a.best.x[i], other->best.x[i]));
      ASSERT_EQ(a.restart_gaps.size(), other->restart_gaps.size());
      for (std::size_t i = 0; i < a.restart_gaps.size(); ++i) EXPECT_TRUE(same_bits(a.restart_gaps[i], other->restart_gaps[i]));
    }
  }
  // restart 0 starts at the uniform point, so it does not depend on the seed
  SearchConfig cfg = small_config();
  const auto inst = sample_instances().front();
  const auto base = minimize_gap_detailed(inst, cfg);
  cfg.seed += 1;
  const auto reseeded = minimize_gap_detailed(inst, cfg);
  EXPECT_TRUE(same_bits(base.restart_gaps.front(), reseeded.restart_gaps.front()));
}

TEST(Properties, TraceCoversEveryRestart) {
  SearchConfig cfg = small_config();
  cfg.restarts = 4;
  std::vector<int> seen(4, 0);
  minimize_gap_detailed(InequalityInstance::shapiro_exponent(4, 0.9), cfg,
                        [&](int restart, int, double, std::span<const double> y) {
                          ++seen[static_cast<std::size_t>(restart)];
                          EXPECT_EQ(y[0], 0.0);
                        });
  for (int s : seen) EXPECT_GT(s, 0);
}

TEST(ExponentMonotonicity, Examples) {
  const std::vector<double> x = {2, 1, 1};
  EXPECT_TRUE(exponent_monotonicity_check(3, 0.5, 1.0, x));
  EXPECT_TRUE(exponent_monotonicity_check(3, 0.7, 0.7, x));
  // strictness in at least one term at (2, 1, 1)
  const double t1 = std::pow(2.0 / 2.0, 0.5);
  const double t1_mapped = std::pow(std::sqrt(2.0) / 2.0, 1.0);
  EXPECT_GT(t1, t1_mapped);
}

TEST(ExponentMonotonicity, RandomDrawsAndMinimumConsequence) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u01(0.01, 1.0);
  std::uniform_real_distribution<double> logx(-3, 3);
  for (int t = 0; t < 1000; ++t) {
    double k1 = u01(rng), k2 = u01(rng);
    if (k1 > k2) std::swap(k1, k2);
    const int n = 3 + t % 5;
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = std::exp(logx(rng));
    ASSERT_TRUE(exponent_monotonicity_check(n, k1, k2, x)) << t;
  }
  // min of LHS at k1 over a sample dominates min of LHS at k2 over the mapped sample
  const int n = 4;
  const double k1 = 0.2, k2 = 0.9;
  double min1 = INFINITY, min2 = INFINITY;
  for (int t = 0; t < 500; ++t) {
    std::vector<double> x(n), mapped(n);
    for (int i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = std::exp(logx(rng));
      mapped[static_cast<std::size_t>(i)] = std::pow(x[static_cast<std::size_t>(i)], k1 / k2);
    }
    min1 = std::min(min1, evaluate(InequalityInstance::shapiro_exponent(n, k1), x).lhs);
    min2 = std::min(min2, evaluate(InequalityInstance::shapiro_exponent(n, k2), mapped).lhs);
  }
  EXPECT_GE(min1, min2 - 1e-12);
}
