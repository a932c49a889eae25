#include "cyclineq/numeric_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "cyclineq/errors.hpp"

namespace cyclineq {

namespace {

struct RestartOutcome {
  double gap = 0;
  std::vector<double> y;
};

std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  // splitmix64 step, so neighbouring restarts get unrelated streams
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(restart + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double gap_at(const TermExpansion& terms, std::span<const double> y) {
  return evaluate_log(terms, y).gap;
}

RestartOutcome descend(const TermExpansion& terms, int n, int restart, const SearchConfig& config,
                       const TraceSink& trace) {
  std::vector<double> y(static_cast<std::size_t>(n), 0.0);
  if (restart > 0) {
    std::mt19937_64 rng(restart_seed(config.seed, restart));
    std::uniform_real_distribution<double> start(-config.start_spread, config.start_spread);
    for (int i = 1; i < n; ++i) y[static_cast<std::size_t>(i)] = start(rng);
  }

  double gap = gap_at(terms, y);
  double step = config.step_init;
  if (trace) trace(restart, 0, gap, y);
  std::vector<double> trial(y.size());
  for (int iter = 0; iter < config.max_iters; ++iter) {
    auto grad = gap_gradient_log(terms, y);
    grad[0] = 0.0;
    double norm2 = 0;
    for (double g : grad) norm2 += g * g;
    if (norm2 == 0 || !std::isfinite(norm2)) break;
    const double norm = std::sqrt(norm2);

    // Armijo backtracking along the normalized descent direction.
    bool accepted = false;
    while (step > 1e-14) {
      for (std::size_t i = 0; i < y.size(); ++i) {
        trial[i] = std::clamp(y[i] - step * grad[i] / norm, -config.log_bound, config.log_bound);
      }
      trial[0] = 0.0;
      const double trial_gap = gap_at(terms, trial);
      if (std::isfinite(trial_gap) && trial_gap <= gap - 1e-4 * step * norm) {
        accepted = true;
        const double improvement = gap - trial_gap;
        y.swap(trial);
        gap = trial_gap;
        if (trace) trace(restart, iter + 1, gap, y);
        step = std::min(step * 2.0, 4.0 * config.log_bound);
        if (improvement < config.tolerance) iter = config.max_iters;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return {gap, std::move(y)};
}

}  // namespace

SearchResult minimize_gap_detailed(const InequalityInstance& instance, const SearchConfig& config,
                                   const TraceSink& trace) {
  const int n = instance.n;
  const TermExpansion terms = expand(instance);
  const int restarts = std::max(1, config.restarts);
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));

  const int threads = trace ? 1 : std::clamp(config.threads, 1, restarts);
  if (threads == 1) {
    for (int r = 0; r < restarts; ++r) outcomes[static_cast<std::size_t>(r)] = descend(terms, n, r, config, trace);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int r = t; r < restarts; r += threads) {
          outcomes[static_cast<std::size_t>(r)] = descend(terms, n, r, config, {});
        }
      });
    }
  }

  SearchResult result;
  for (int r = 0; r < restarts; ++r) {
    const auto& o = outcomes[static_cast<std::size_t>(r)];
    result.restart_gaps.push_back(o.gap);
    if (o.gap < outcomes[static_cast<std::size_t>(result.best_restart)].gap) result.best_restart = r;
  }
  const auto& best = outcomes[static_cast<std::size_t>(result.best_restart)];
  std::vector<double> x(best.y.size());
  std::transform(best.y.begin(), best.y.end(), x.begin(), [](double v) { return std::exp(v); });
  const auto values = evaluate_log(terms, best.y);
  result.best = GapReport{instance, std::move(x), values.lhs, values.rhs, values.gap};
  return result;
}

GapReport minimize_gap(const InequalityInstance& instance, const SearchConfig& config) {
  return minimize_gap_detailed(instance, config).best;
}

GapReport grid_oracle(const InequalityInstance& instance, const SearchConfig& config) {
  const int n = instance.n;
  const int points = config.grid_points_per_dim;
  if (points < 2) throw DomainError(ErrorCode::OutOfDomain, "grid needs at least 2 points per dimension");
  double total = std::pow(static_cast<double>(points), n - 1);
  if (total > static_cast<double>(config.grid_budget)) {
    throw DomainError(ErrorCode::BudgetExceeded,
                      "grid of " + std::to_string(points) + "^" + std::to_string(n - 1) +
                          " points exceeds budget " + std::to_string(config.grid_budget));
  }
  std::vector<double> axis(static_cast<std::size_t>(points));
  const double lo = std::log(config.grid_lo);
  const double hi = std::log(config.grid_hi);
  for (int t = 0; t < points; ++t) axis[static_cast<std::size_t>(t)] = lo + (hi - lo) * t / (points - 1);

  const TermExpansion terms = expand(instance);
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  std::vector<double> y(static_cast<std::size_t>(n), 0.0);
  std::vector<double> best_y = y;
  double best_gap = INFINITY;
  while (true) {
    for (int i = 1; i < n; ++i) y[static_cast<std::size_t>(i)] = axis[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])];
    const double g = gap_at(terms, y);
    if (g < best_gap) {
      best_gap = g;
      best_y = y;
    }
    int pos = 1;
    while (pos < n && ++digits[static_cast<std::size_t>(pos)] == points) digits[static_cast<std::size_t>(pos++)] = 0;
    if (pos >= n) break;
  }
  std::vector<double> x(best_y.size());
  std::transform(best_y.begin(), best_y.end(), x.begin(), [](double v) { return std::exp(v); });
  const auto values = evaluate_log(terms, best_y);
  return GapReport{instance, std::move(x), values.lhs, values.rhs, values.gap};
}

bool exponent_monotonicity_check(int n, double k1, double k2, std::span<const double> x) {
  if (!(0 < k1 && k1 <= k2 && k2 <= 1)) {
    throw DomainError(ErrorCode::OutOfDomain, "need 0 < k1 <= k2 <= 1");
  }
  if (x.size() != static_cast<std::size_t>(n)) throw DomainError(ErrorCode::DimensionMismatch, "x has wrong size");
  for (double xi : x) {
    if (!(xi > 0)) throw DomainError(ErrorCode::NonPositiveInput, "x must be positive");
  }
  const double r = k1 / k2;
  for (int i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    const double x1 = x[static_cast<std::size_t>((i + 1) % n)];
    const double x2 = x[static_cast<std::size_t>((i + 2) % n)];
    const double left = std::pow(xi / (x1 + x2), k1);
    const double right = std::pow(std::pow(xi, r) / (std::pow(x1, r) + std::pow(x2, r)), k2);
    // 4 ulps of slack for the two independent pow chains
    if (left < right * (1 - 4 * std::numeric_limits<double>::epsilon())) return false;
  }
  return true;
}

}  // namespace cyclineq
