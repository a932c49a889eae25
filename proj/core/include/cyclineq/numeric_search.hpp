#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cyclineq/inequality.hpp"

namespace cyclineq {

struct SearchConfig {
  int restarts = 20;
  int max_iters = 400;
  double step_init = 0.5;
  double tolerance = 1e-12;      // stop when a step improves the gap by less than this
  std::uint64_t seed = 0x5eed;
  int grid_points_per_dim = 13;  // grid_oracle only
  double grid_lo = 1e-2;
  double grid_hi = 1e2;
  double start_spread = 10.0;     // restarts start uniformly in [-spread, spread]^(n-1)
  double log_bound = 25.0;       // iterates are kept in [-bound, bound]
  long long grid_budget = 20'000'000;
  int threads = 1;
};

// Called for every accepted descent iterate.
using TraceSink = std::function<void(int restart, int iteration, double gap, std::span<const double> y)>;

struct SearchResult {
  GapReport best;
  int best_restart = 0;
  std::vector<double> restart_gaps;  // final gap of each restart, by index
};

// Multi-start projected gradient descent in y = log x with y_1 pinned at 0.
// Restart 0 starts at the uniform point. Deterministic for a fixed seed,
// independent of the thread count.
SearchResult minimize_gap_detailed(const InequalityInstance& instance, const SearchConfig& config,
                                   const TraceSink& trace = {});

GapReport minimize_gap(const InequalityInstance& instance, const SearchConfig& config);

// Minimum over a log-uniform grid on [grid_lo, grid_hi]^(n-1) with x_1 = 1.
// Throws DomainError(BudgetExceeded) when the grid exceeds grid_budget points.
GapReport grid_oracle(const InequalityInstance& instance, const SearchConfig& config);

// Termwise check that (x_i/(x_{i+1}+x_{i+2}))^k1 >= (x_i^r / (x_{i+1}^r + x_{i+2}^r))^k2
// with r = k1/k2, for 0 < k1 <= k2 <= 1.
bool exponent_monotonicity_check(int n, double k1, double k2, std::span<const double> x);

}  // namespace cyclineq
