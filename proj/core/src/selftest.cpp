#include "cyclineq/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "cyclineq/band_count.hpp"
#include "cyclineq/classifier.hpp"
#include "cyclineq/errors.hpp"
#include "cyclineq/numeric_search.hpp"
#include "cyclineq/refuter.hpp"
#include "cyclineq/witness.hpp"

namespace cyclineq {

AcceptanceBudget AcceptanceBudget::reduced() {
  AcceptanceBudget b;
  b.main_max_n = 4;
  b.grid_points = 9;
  b.restarts = 10;
  b.search_iters = 200;
  b.certificate_max_n = 4;
  b.random_vectors = 3;
  b.band_max_n = 7;
  b.lucas_max_n = 12;
  b.property_draws = 200;
  return b;
}

namespace {

constexpr double kTol = 1e-9;

// Collects the first few failures; a criterion passes iff none were recorded.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) messages_ << (failures_ > 1 ? "; " : "") << what;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
  long checks() const { return checks_; }

  CriterionResult finish(int id, std::string name) const {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.passed = failures_ == 0;
    std::ostringstream detail;
    detail << checks_ << " checks";
    if (!notes_.empty()) detail << ", " << notes_;
    if (failures_ > 0) detail << ", " << failures_ << " failed: " << messages_.str();
    r.detail = detail.str();
    return r;
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::ostringstream messages_;
  std::string notes_;
};

std::string sigma_str(const Permutation& sigma) {
  std::ostringstream s;
  s << '[';
  for (std::size_t i = 0; i < sigma.images().size(); ++i) s << (i ? "," : "") << sigma.images()[i];
  s << ']';
  return s.str();
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

SearchConfig search_config(const AcceptanceBudget& b) {
  SearchConfig c;
  c.restarts = b.restarts;
  c.max_iters = b.search_iters;
  c.grid_points_per_dim = b.grid_points;
  c.seed = b.seed;
  c.threads = b.threads;
  return c;
}

double direct_sum(const Permutation& sigma, const std::vector<double>& x) {
  double s = 0;
  for (int i = 1; i <= sigma.size(); ++i) s += x[static_cast<std::size_t>(i - 1)] / x[static_cast<std::size_t>(sigma(i) - 1)];
  return s;
}

std::vector<double> random_positive(std::mt19937_64& rng, int n, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = std::exp(u(rng));
  return x;
}

CriterionResult classifier_oracle(const AcceptanceBudget& b) {
  Tally t;
  const SearchConfig config = search_config(b);
  long held = 0, refuted = 0, perms = 0, search_agrees = 0;
  double worst_held = 0;
  for (int n = 2; n <= b.main_max_n; ++n) {
    for_each_permutation(n, [&](const Permutation& sigma) {
      ++perms;
      for (int step = -2 * n; step <= 2 * n; ++step) {
        const double k = step / 2.0;
        const auto instance = InequalityInstance::main_exponent(sigma, k);
        const std::string tag = sigma_str(sigma) + " k=" + num(k);
        if (holds(sigma, k)) {
          ++held;
          if (n <= b.grid_max_n) {
            const double g = grid_oracle(instance, config).gap;
            t.check(g >= -kTol, "grid gap " + num(g) + " at " + tag);
          }
          const double g = minimize_gap(instance, config).gap;
          worst_held = std::min(worst_held, g);
          t.check(g >= -kTol, "search gap " + num(g) + " at " + tag);
        } else {
          ++refuted;
          try {
            const auto report = refute_main(sigma, k);
            const double g = evaluate(instance, report.x).gap;
            t.check(g < -kTol && report.gap < -kTol, "refuter gap " + num(g) + " at " + tag);
            if (minimize_gap(instance, config).gap < -kTol) ++search_agrees;
          } catch (const DomainError& e) {
            t.check(false, std::string("refuter threw ") + e.what() + " at " + tag);
          }
        }
      }
    });
  }
  t.note(std::to_string(perms) + " permutations");
  t.note(std::to_string(held) + " held");
  t.note(std::to_string(refuted) + " refuted");
  t.note("lowest search gap on held cases " + num(worst_held));
  t.note("descent alone found " + std::to_string(search_agrees) + " of the refuted cases");
  return t.finish(1, "classifier vs oracles (grid, search, refuter)");
}

CriterionResult certificates(const AcceptanceBudget& b) {
  Tally t;
  std::mt19937_64 rng(b.seed);
  long pairs = 0, seen = 0, mutations = 0;
  for (int n = 2; n <= b.certificate_max_n; ++n) {
    for_each_permutation(n, [&](const Permutation& sigma) {
      for (long long u = -6; u <= 6; ++u) {
        for (long long v = 1; v <= 3; ++v) {
          if (std::gcd(u < 0 ? -u : u, v) != 1) continue;
          const RationalExponent k(u, v);
          if (!holds(sigma, k.value())) continue;
          if (seen++ % b.certificate_stride != 0) continue;
          ++pairs;
          const std::string tag = sigma_str(sigma) + " k=" + k.str();
          DecompositionCertificate cert = build_certificate(sigma, k);
          if (b.inject_mutation && pairs == 1) cert.summands[0][0] += 1;
          const auto verdict = check_certificate(cert, sigma);
          t.check(verdict.ok(), "check_certificate " + std::string(to_string(verdict.diagnosis)) + " at " + tag);

          for (int r = 0; r < b.random_vectors; ++r) {
            const auto x = random_positive(rng, n, 2.0);
            const auto ratios = RatioVector::from_x(x);
            const auto values = summand_values(cert, ratios);
            const double from_counts = std::accumulate(values.begin(), values.end(), 0.0);
            const double expected = direct_sum(sigma, x);
            const double rel = std::abs(from_counts - expected) / expected;
            t.check(rel < 1e-10, "summand products off by " + num(rel) + " at " + tag);
            const double rel_rounds = std::abs(rounds_value(cert, ratios) - expected) / expected;
            t.check(rel_rounds < 1e-10, "round products off by " + num(rel_rounds) + " at " + tag);
          }

          if (!b.inject_mutation) {
            for (int i = 0; i < n; ++i) {
              for (int j = 0; j < n; ++j) {
                for (int bit = 0; bit < 4; ++bit) {
                  DecompositionCertificate bad = cert;
                  bad.summands[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ^= (1LL << bit);
                  ++mutations;
                  t.check(!check_certificate(bad, sigma).ok(), "mutation accepted at " + tag);
                }
              }
            }
          }
        }
      }
    });
  }
  t.check(pairs >= 100 || b.certificate_stride > 1 || b.certificate_max_n < 5,
          "only " + std::to_string(pairs) + " admissible pairs");
  t.note(std::to_string(pairs) + " certificates");
  t.note(std::to_string(mutations) + " bit mutations");
  return t.finish(2, "certificate soundness, semantics, mutation rejection");
}

CriterionResult corollaries(const AcceptanceBudget&) {
  Tally t;
  for (int n = 3; n <= 8; ++n) {
    for (int s = 0; s < n; ++s) {
      const auto v = admissible_exponents(Permutation::shift(n, s));
      // the identity (s = 0) admits every k, so its negative threshold is 0, not n
      const int expected_minus = s == 0 ? 0 : n - s;
      t.check(v.d_plus == s && v.d_minus == expected_minus,
              "shift " + std::to_string(s) + " on n=" + std::to_string(n) + " gave (" +
                  std::to_string(v.d_plus) + "," + std::to_string(v.d_minus) + ")");
    }
  }
  return t.finish(3, "cyclic-shift thresholds (s, n-s)");
}

CriterionResult equal_multiplicity(const AcceptanceBudget&) {
  Tally t;
  long blocks = 0;
  for (int n = 2; n <= 6; ++n) {
    for_each_permutation(n, [&](const Permutation& sigma) {
      const auto decomposition = cyclic_blocks(sigma);
      for (const auto& block : decomposition.blocks) {
        ++blocks;
        const auto counts = expand_block(block, n);
        const bool equal = std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) == counts.end();
        t.check(equal, "unequal multiplicities in a block of " + sigma_str(sigma));
        t.check(is_cyclically_constructed(block.fractions).has_value(),
                "block of " + sigma_str(sigma) + " not cyclically constructed");
      }
    });
  }
  t.note(std::to_string(blocks) + " blocks");
  return t.finish(4, "equal multiplicity of every cyclic block (n <= 6)");
}

CriterionResult shapiro_table(const AcceptanceBudget& b) {
  Tally t;
  SearchConfig config = search_config(b);

  // n = 2: min over t of t^k + (1-t)^k
  const auto id2 = Permutation::identity(2);
  for (double k : {1.0, 1.25, 1.5, 2.0, 3.0}) {
    const double min_lhs = minimize_gap(InequalityInstance::shapiro_type(id2, k), config).gap + 1.0;
    t.check(std::abs(min_lhs - std::pow(2.0, 1.0 - k)) < kTol,
            "n=2 k=" + num(k) + " min " + num(min_lhs) + " vs 2^(1-k)");
  }
  for (double k : {0.0, 0.25, 0.5, 0.75}) {
    const double min_lhs = minimize_gap(InequalityInstance::shapiro_type(id2, k), config).gap + 1.0;
    t.check(min_lhs >= 1.0 - kTol, "n=2 k=" + num(k) + " min " + num(min_lhs) + " < 1");
  }
  for (double k : {1.5, 2.0}) {
    const auto r = refute_shapiro_type(id2, k);
    t.check(r.gap < -kTol && std::abs(r.lhs - std::pow(2.0, 1.0 - k)) < kTol, "n=2 refuter at k=" + num(k));
  }

  // n = 3 with constant RHS 3/2: identity and the three transpositions
  config.grid_points_per_dim = std::max(b.grid_points, 41);
  for_each_permutation(3, [&](const Permutation& sigma) {
    if (!sigma.is_involution()) return;
    for (double k : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const auto instance = InequalityInstance::shapiro_type(sigma, k);
      const double g_grid = grid_oracle(instance, config).gap;
      const double g_search = minimize_gap(instance, config).gap;
      t.check(g_grid >= -kTol && g_search >= -kTol,
              "n=3 " + sigma_str(sigma) + " k=" + num(k) + " gaps " + num(g_grid) + ", " + num(g_search));
    }
    const auto r = refute_shapiro_type(sigma, 1.5);
    t.check(r.construction == "all ones" && std::abs(r.gap - (3 * std::pow(2.0, -1.5) - 1.5)) < kTol,
            "n=3 " + sigma_str(sigma) + " all-ones refutation at k=1.5");
  });

  // n = 4, identity, k = 1.5
  const auto id4 = Permutation::identity(4);
  const std::vector<double> ones(4, 1.0);
  const double g4 = evaluate(InequalityInstance::shapiro_type(id4, 1.5), ones).gap;
  t.check(std::abs(g4 - (-0.585786437626905)) < kTol, "n=4 all-ones gap " + num(g4));
  const auto r4 = refute_shapiro_type(id4, 1.5);
  t.check(std::abs(r4.gap - g4) < kTol, "n=4 refuter gap " + num(r4.gap));
  return t.finish(5, "Shapiro-type table n = 2, 3, 4");
}

CriterionResult nesbitt(const AcceptanceBudget&) {
  Tally t;
  const auto r = refute_nesbitt_exponent();
  t.check(r.lhs < r.rhs, "LHS not below 3/2^0.1");
  t.check(std::abs(r.lhs - kNesbittCounterexampleLhs) < 1e-12, "lhs " + num(r.lhs));
  t.check(std::abs(r.rhs - kNesbittCounterexampleRhs) < 1e-12, "rhs " + num(r.rhs));
  t.check(std::abs(r.gap - kNesbittCounterexampleGap) < 1e-12, "gap " + num(r.gap));
  t.note("gap " + num(r.gap));
  return t.finish(6, "Nesbitt exponent counterexample");
}

CriterionResult band_counts(const AcceptanceBudget& b) {
  Tally t;
  for (int n = 2; n <= b.band_max_n; ++n) {
    for (int k = 0; k < n; ++k) {
      const BigInt fast = count_band_permutations(n, k, b.threads);
      t.check(fast == brute_force_count(n, k),
              "P(" + std::to_string(n) + "," + std::to_string(k) + ") permanent != enumeration");
    }
    t.check(count_band_permutations(n, 0) == 1, "P(n,0) != 1 at n=" + std::to_string(n));
    t.check(count_band_permutations(n, 1) == 2, "P(n,1) != 2 at n=" + std::to_string(n));
  }
  std::vector<int> outliers;
  for (const auto& row : lucas_identity_report(b.lucas_max_n, b.threads)) {
    if (!row.match) outliers.push_back(row.n);
  }
  t.check(outliers == kLucasOutliers, "Lucas outliers differ from the pinned set {2}");
  std::string list;
  for (int n : outliers) list += (list.empty() ? "" : " ") + std::to_string(n);
  t.note("P(n,2) != 2+L(n) only at n in {" + list + "}");
  return t.finish(7, "band counts and the Lucas identity");
}

CriterionResult properties(const AcceptanceBudget& b) {
  Tally t;
  std::mt19937_64 rng(b.seed ^ 0xabcdefULL);
  std::uniform_int_distribution<int> pick_n(3, 7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto random_instance = [&](int n, int which) {
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 1);
    std::shuffle(images.begin(), images.end(), rng);
    const Permutation sigma(n, images);
    const double k = -3.0 + 6.0 * unit(rng);
    switch (which % 6) {
      case 0: return InequalityInstance::main_exponent(sigma, k);
      case 1: return InequalityInstance::cyclic_shift(n, 1 + which % n, k);
      case 2: return InequalityInstance::shapiro_type(sigma, std::abs(k));
      case 3: return InequalityInstance::shapiro_exponent(n, std::abs(k));
      case 4: return InequalityInstance::nesbitt_classic(n);
      default: return InequalityInstance::nesbitt_exponent(n, k);
    }
  };

  for (int d = 0; d < b.property_draws; ++d) {
    const int n = pick_n(rng);
    const auto instance = random_instance(n, d);
    const auto x = random_positive(rng, n, 2.0);
    const double c = std::exp(std::log(1e-3) + unit(rng) * std::log(1e6));
    std::vector<double> cx(x);
    for (auto& v : cx) v *= c;
    const auto base = evaluate(instance, x);
    const auto scaled = evaluate(instance, cx);
    const double scale = std::max({1.0, std::abs(base.lhs), std::abs(base.rhs)});
    t.check(std::abs(base.gap - scaled.gap) <= 1e-12 * scale,
            "scale invariance " + std::string(to_string(instance.kind)) + " diff " + num(base.gap - scaled.gap));

    // analytic gradient vs central differences in log coordinates
    const auto terms = expand(instance);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (auto& v : y) v = -1.0 + 2.0 * unit(rng);
    const auto grad = gap_gradient_log(terms, y);
    double worst = 0, gmax = 1;
    for (int m = 0; m < n; ++m) {
      const double h = 1e-5;
      auto yp = y, ym = y;
      yp[static_cast<std::size_t>(m)] += h;
      ym[static_cast<std::size_t>(m)] -= h;
      const auto fp = evaluate_log(terms, yp);
      const auto fm = evaluate_log(terms, ym);
      const double fd = (fp.gap - fm.gap) / (2 * h);
      worst = std::max(worst, std::abs(fd - grad[static_cast<std::size_t>(m)]));
      gmax = std::max(gmax, std::abs(grad[static_cast<std::size_t>(m)]));
    }
    t.check(worst / gmax < 1e-6, "gradient mismatch " + num(worst / gmax) + " for " + std::string(to_string(instance.kind)));

    const auto ratios = RatioVector::from_x(x);
    t.check(std::abs(ratios.product() - 1.0) < 1e-12, "prod a_i = " + num(ratios.product()));

    const double k2 = 1e-3 + (1.0 - 1e-3) * unit(rng);
    const double k1 = 1e-3 + (k2 - 1e-3) * unit(rng);
    t.check(exponent_monotonicity_check(n, k1, k2, x), "concavity check failed at k1=" + num(k1) + " k2=" + num(k2));
  }
  return t.finish(8, "property suite (scale, gradient, ratio product, concavity)");
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceBudget& budget) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult result;
  try {
    switch (id) {
      case 1: result = classifier_oracle(budget); break;
      case 2: result = certificates(budget); break;
      case 3: result = corollaries(budget); break;
      case 4: result = equal_multiplicity(budget); break;
      case 5: result = shapiro_table(budget); break;
      case 6: result = nesbitt(budget); break;
      case 7: result = band_counts(budget); break;
      case 8: result = properties(budget); break;
      default: throw DomainError(ErrorCode::OutOfDomain, "no criterion " + std::to_string(id));
    }
  } catch (const std::exception& e) {
    result.id = id;
    result.name = "criterion " + std::to_string(id);
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceBudget& budget) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, budget));
  return out;
}

}  // namespace cyclineq
