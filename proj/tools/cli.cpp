#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include "cyclineq/band_count.hpp"
#include "cyclineq/classifier.hpp"
#include "cyclineq/errors.hpp"
#include "cyclineq/json_io.hpp"
#include "cyclineq/numeric_search.hpp"
#include "cyclineq/refuter.hpp"
#include "cyclineq/selftest.hpp"
#include "cyclineq/witness.hpp"

namespace cyclineq::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// `shift:s` (needs n) or a JSON array of 1-based images.
Permutation parse_sigma(const std::string& text, std::optional<int> n) {
  if (text.rfind("shift:", 0) == 0) {
    if (!n) throw UsageError("--sigma shift:s needs --n");
    long long s = 0;
    try {
      s = std::stoll(text.substr(6));
    } catch (const std::exception&) {
      throw UsageError("cannot parse shift amount in '" + text + "'");
    }
    return Permutation::shift(*n, s);
  }
  Json parsed;
  try {
    parsed = Json::parse(text);
  } catch (const nlohmann::json::exception&) {
    throw UsageError("--sigma must be a JSON array like [2,3,1] or shift:s");
  }
  Permutation sigma = permutation_from_json(parsed);
  if (n && *n != sigma.size()) {
    throw UsageError("--n " + std::to_string(*n) + " disagrees with sigma of length " + std::to_string(sigma.size()));
  }
  return sigma;
}

double parse_k(const std::string& text) {
  try {
    if (text.find('/') != std::string::npos) return RationalExponent::parse(text).value();
    std::size_t used = 0;
    const double k = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(k)) throw UsageError("bad exponent '" + text + "'");
    return k;
  } catch (const DomainError&) {
    throw UsageError("bad exponent '" + text + "'");
  } catch (const std::invalid_argument&) {
    throw UsageError("bad exponent '" + text + "'");
  } catch (const std::out_of_range&) {
    throw UsageError("bad exponent '" + text + "'");
  }
}

std::optional<int> opt(int value, const CLI::Option* option) {
  return option->count() > 0 ? std::optional<int>(value) : std::nullopt;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << content;
}

int threads_from_env(int flag_value) {
  if (const char* env = std::getenv("CYCLINEQ_THREADS"); env != nullptr && *env != '\0') {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw UsageError("CYCLINEQ_THREADS must be an integer");
    }
  }
  return std::max(1, flag_value);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cyclineq: classify, certify and refute cyclic inequalities with exponents"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads (CYCLINEQ_THREADS overrides)");

  int n = 0;
  std::string sigma_text, k_text;

  auto* classify = app.add_subcommand("classify", "Exponent thresholds d_plus, d_minus for sigma");
  auto* classify_n = classify->add_option("--n", n, "Number of variables");
  classify->add_option("--sigma", sigma_text, "JSON array of images or shift:s")->required();
  classify->add_option("--k", k_text, "Also decide a specific exponent");

  auto* witness = app.add_subcommand("witness", "Build or check a rearrangement certificate");
  auto* witness_n = witness->add_option("--n", n);
  witness->add_option("--sigma", sigma_text)->required();
  witness->add_option("--k", k_text, "Exponent as u/v")->required();
  std::string check_only, witness_out;
  witness->add_option("--check-only", check_only, "Certificate JSON file to verify instead of building");
  witness->add_option("--out", witness_out, "Also write the certificate to this file");

  auto* refute = app.add_subcommand("refute", "Closed-form counterexample vector");
  std::string refute_ineq = "main";
  refute->add_option("--ineq", refute_ineq)->check(CLI::IsMember({"main", "shapiro", "nesbitt"}));
  auto* refute_n = refute->add_option("--n", n);
  refute->add_option("--sigma", sigma_text);
  refute->add_option("--k", k_text);

  auto* search = app.add_subcommand("search", "Minimize LHS - RHS numerically");
  std::string search_ineq = "main";
  search->add_option("--ineq", search_ineq)
      ->check(CLI::IsMember({"main", "shift", "shapiro", "shapiro-exp", "nesbitt", "nesbitt-classic"}));
  auto* search_n = search->add_option("--n", n);
  search->add_option("--sigma", sigma_text);
  search->add_option("--k", k_text);
  int p = 2;
  search->add_option("--p", p, "Shift parameter p of the cyclic-shift inequality (sigma(i) = i + p - 1)");
  SearchConfig config;
  search->add_option("--restarts", config.restarts)->check(CLI::PositiveNumber);
  search->add_option("--seed", config.seed);
  search->add_option("--max-iters", config.max_iters)->check(CLI::PositiveNumber);
  bool use_grid = false;
  search->add_flag("--grid", use_grid, "Brute-force log grid instead of descent");
  search->add_option("--grid-points", config.grid_points_per_dim)->check(CLI::Range(2, 1000));
  std::string trace_path, plot_path, sweep;
  search->add_option("--trace", trace_path, "CSV of descent iterates: start point, then each accepted step");
  search->add_option("--emit-plot", plot_path, "CSV of per-restart (or per-k) minima");
  search->add_option("--k-sweep", sweep, "lo:hi:count, repeat the search over an exponent range");

  auto* count = app.add_subcommand("count", "Band permutation counts P(n,k)");
  auto* count_n = count->add_option("--n", n);
  int band_k = 2;
  auto* count_k = count->add_option("--k", band_k);
  bool oracle = false, csv = false;
  int lucas_table = 0;
  count->add_flag("--oracle", oracle, "Also enumerate S_n and compare");
  count->add_option("--lucas-table", lucas_table, "Table of P(n,2) vs 2 + L(n) up to N");
  count->add_flag("--csv", csv, "CSV instead of JSON");

  auto* shapiro = app.add_subcommand("shapiro", "Case analysis of the Shapiro-type inequality");
  auto* shapiro_n = shapiro->add_option("--n", n);
  shapiro->add_option("--sigma", sigma_text)->required();
  shapiro->add_option("--k", k_text)->required();

  auto* selftest = app.add_subcommand("selftest", "Acceptance suite at reduced budget");
  bool as_json = false, inject = false, full = false;
  selftest->add_flag("--json", as_json);
  selftest->add_flag("--inject-mutation", inject, "Corrupt one certificate (the witness row must fail)");
  selftest->add_flag("--full", full, "Use the full acceptance budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    threads = threads_from_env(threads);
    config.threads = threads;

    if (*classify) {
      const Permutation sigma = parse_sigma(sigma_text, opt(n, classify_n));
      Json doc = classify_json(sigma, admissible_exponents(sigma));
      if (!k_text.empty()) {
        const double k = parse_k(k_text);
        doc["k"] = k;
        doc["holds"] = holds(sigma, k);
        Json violations = Json::array();
        for (const auto& v : violating_indices(sigma, k)) {
          violations.push_back({{"i", v.index}, {"threshold", v.required_threshold}});
        }
        doc["violations"] = violations;
      }
      out << doc.dump(2) << '\n';
      return kExitOk;
    }

    if (*witness) {
      const Permutation sigma = parse_sigma(sigma_text, opt(n, witness_n));
      if (k_text.find('/') == std::string::npos) throw UsageError("witness needs --k in u/v form");
      const RationalExponent k = RationalExponent::parse(k_text);
      if (!check_only.empty()) {
        std::ifstream f(check_only);
        if (!f) throw UsageError("cannot read " + check_only);
        Json parsed;
        try {
          parsed = Json::parse(f);
        } catch (const nlohmann::json::exception& e) {
          throw UsageError(std::string("invalid JSON in ") + check_only + ": " + e.what());
        }
        const auto cert = certificate_from_json(parsed);
        if (cert.u != k.u() || cert.v != k.v()) {
          throw DomainError(ErrorCode::OutOfDomain, "certificate is for k = " + std::to_string(cert.u) + "/" +
                                                        std::to_string(cert.v) + ", not " + k.str());
        }
        const auto verdict = check_certificate(cert, sigma);
        Json doc;
        doc["valid"] = verdict.ok();
        doc["diagnosis"] = std::string(to_string(verdict.diagnosis));
        if (!verdict.detail.empty()) doc["detail"] = verdict.detail;
        out << doc.dump(2) << '\n';
        return verdict.ok() ? kExitOk : kExitDomain;
      }
      const auto cert = build_certificate(sigma, k);
      const std::string text = to_json(cert).dump(2);
      if (!witness_out.empty()) write_file(witness_out, text + "\n");
      out << text << '\n';
      return kExitOk;
    }

    if (*refute) {
      if (refute_ineq == "nesbitt") {
        out << to_json(refute_nesbitt_exponent()).dump(2) << '\n';
        return kExitOk;
      }
      if (sigma_text.empty() || k_text.empty()) throw UsageError("refute needs --sigma and --k");
      const Permutation sigma = parse_sigma(sigma_text, opt(n, refute_n));
      const double k = parse_k(k_text);
      const auto report = refute_ineq == "main" ? refute_main(sigma, k) : refute_shapiro_type(sigma, k);
      out << to_json(report).dump(2) << '\n';
      return kExitOk;
    }

    if (*search) {
      const auto kind = parse_inequality_kind(search_ineq).value();
      const bool needs_sigma = kind == InequalityKind::MainExponent || kind == InequalityKind::ShapiroType;
      const bool needs_k = kind != InequalityKind::NesbittClassic;
      std::optional<Permutation> sigma;
      if (needs_sigma) {
        if (sigma_text.empty()) throw UsageError("--ineq " + search_ineq + " needs --sigma");
        sigma = parse_sigma(sigma_text, opt(n, search_n));
      } else if (search_n->count() == 0) {
        throw UsageError("--ineq " + search_ineq + " needs --n");
      }
      if (needs_k && k_text.empty() && sweep.empty()) throw UsageError("--ineq " + search_ineq + " needs --k");

      auto make = [&](double k) {
        switch (kind) {
          case InequalityKind::MainExponent: return InequalityInstance::main_exponent(*sigma, k);
          case InequalityKind::CyclicShift: return InequalityInstance::cyclic_shift(n, p, k);
          case InequalityKind::ShapiroType: return InequalityInstance::shapiro_type(*sigma, k);
          case InequalityKind::ShapiroExponent: return InequalityInstance::shapiro_exponent(n, k);
          case InequalityKind::NesbittClassic: return InequalityInstance::nesbitt_classic(n);
          case InequalityKind::NesbittExponent: return InequalityInstance::nesbitt_exponent(n, k);
        }
        throw UsageError("unknown inequality");
      };

      if (!sweep.empty()) {
        double lo = 0, hi = 0;
        int steps = 0;
        char c1 = 0, c2 = 0;
        std::istringstream s(sweep);
        if (!(s >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1) {
          throw UsageError("--k-sweep expects lo:hi:count");
        }
        Json rows = Json::array();
        std::ostringstream plot;
        plot << "k,gap\n" << std::setprecision(17);
        for (int t = 0; t < steps; ++t) {
          const double k = steps == 1 ? lo : lo + (hi - lo) * t / (steps - 1);
          const auto instance = make(k);
          const auto best = use_grid ? grid_oracle(instance, config) : minimize_gap(instance, config);
          rows.push_back(to_json(best));
          plot << k << ',' << best.gap << '\n';
        }
        if (!plot_path.empty()) write_file(plot_path, plot.str());
        out << rows.dump(2) << '\n';
        return kExitOk;
      }

      const auto instance = make(needs_k ? parse_k(k_text) : 1.0);
      if (use_grid) {
        out << to_json(grid_oracle(instance, config)).dump(2) << '\n';
        return kExitOk;
      }
      std::ostringstream trace_csv;
      trace_csv << std::setprecision(17);
      TraceSink sink;
      if (!trace_path.empty()) {
        trace_csv << "restart,iteration,gap";
        for (int i = 1; i <= instance.n; ++i) trace_csv << ",y" << i;
        trace_csv << '\n';
        sink = [&](int restart, int iteration, double gap, std::span<const double> y) {
          trace_csv << restart << ',' << iteration << ',' << gap;
          for (double v : y) trace_csv << ',' << v;
          trace_csv << '\n';
        };
      }
      const auto result = minimize_gap_detailed(instance, config, sink);
      if (!trace_path.empty()) write_file(trace_path, trace_csv.str());
      if (!plot_path.empty()) {
        std::ostringstream plot;
        plot << "restart,gap\n" << std::setprecision(17);
        for (std::size_t r = 0; r < result.restart_gaps.size(); ++r) plot << r << ',' << result.restart_gaps[r] << '\n';
        write_file(plot_path, plot.str());
      }
      Json doc = to_json(result.best);
      doc["best_restart"] = result.best_restart;
      doc["restarts"] = config.restarts;
      doc["seed"] = config.seed;
      out << doc.dump(2) << '\n';
      return kExitOk;
    }

    if (*count) {
      if (lucas_table > 0) {
        const auto rows = lucas_identity_report(lucas_table, threads);
        if (csv) {
          out << "n,P_n_2,two_plus_lucas,match\n";
          for (const auto& r : rows) {
            out << r.n << ',' << big_to_string(r.band_count) << ',' << big_to_string(r.shifted_lucas) << ','
                << (r.match ? "true" : "false") << '\n';
          }
        } else {
          Json doc = Json::array();
          for (const auto& r : rows) doc.push_back(to_json(r));
          out << doc.dump(2) << '\n';
        }
        return kExitOk;
      }
      if (count_n->count() == 0 || count_k->count() == 0) throw UsageError("count needs --n and --k (or --lucas-table)");
      const BigInt value = count_band_permutations(n, band_k, threads);
      std::optional<BigInt> brute;
      if (oracle) brute = brute_force_count(n, band_k);
      if (csv) {
        out << "n,k,count" << (brute ? ",oracle" : "") << '\n';
        out << n << ',' << band_k << ',' << big_to_string(value);
        if (brute) out << ',' << big_to_string(*brute);
        out << '\n';
      } else {
        Json doc;
        doc["n"] = n;
        doc["k"] = band_k;
        doc["count"] = big_to_string(value);
        if (brute) {
          doc["oracle"] = big_to_string(*brute);
          doc["agree"] = *brute == value;
        }
        out << doc.dump(2) << '\n';
      }
      return brute && *brute != value ? kExitDomain : kExitOk;
    }

    if (*shapiro) {
      const Permutation sigma = parse_sigma(sigma_text, opt(n, shapiro_n));
      const double k = parse_k(k_text);
      const auto prediction = predict_shapiro_type(sigma, k);
      Json doc;
      doc["n"] = sigma.size();
      doc["sigma"] = to_json(sigma);
      doc["k"] = k;
      doc["prediction"] = to_json(prediction);
      if (prediction.verdict == ShapiroVerdict::Fails) {
        try {
          doc["counterexample"] = to_json(refute_shapiro_type(sigma, k));
        } catch (const DomainError& e) {
          doc["counterexample"] = nullptr;
          doc["counterexample_note"] = e.what();
        }
      }
      out << doc.dump(2) << '\n';
      return kExitOk;
    }

    if (*selftest) {
      AcceptanceBudget budget = full ? AcceptanceBudget::full() : AcceptanceBudget::reduced();
      budget.threads = threads;
      budget.inject_mutation = inject;
      const auto results = run_acceptance(budget);
      bool all = true;
      Json doc = Json::array();
      for (const auto& r : results) {
        all = all && r.passed;
        if (as_json) {
          doc.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        } else {
          out << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << " (" << std::fixed
              << std::setprecision(1) << r.seconds << "s): " << r.detail << '\n';
        }
      }
      if (as_json) out << Json{{"passed", all}, {"criteria", doc}}.dump(2) << '\n';
      return all ? kExitOk : kExitDomain;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cyclineq::cli
