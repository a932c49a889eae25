#include "cyclineq/witness.hpp"

#include <boost/rational.hpp>
#include <charconv>
#include <cmath>
#include <numeric>

#include "cyclineq/classifier.hpp"
#include "cyclineq/errors.hpp"

namespace cyclineq {

namespace {

using Rational = boost::rational<long long>;

long long parse_integer(std::string_view text) {
  long long value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw DomainError(ErrorCode::OutOfDomain, "cannot parse integer '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

RationalExponent::RationalExponent(long long u, long long v) {
  if (v == 0) throw DomainError(ErrorCode::OutOfDomain, "exponent denominator is zero");
  if (v < 0) {
    u = -u;
    v = -v;
  }
  const long long g = std::gcd(u < 0 ? -u : u, v);
  u_ = u / g;
  v_ = v / g;
}

RationalExponent RationalExponent::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return {parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1))};
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15) {
      throw DomainError(ErrorCode::OutOfDomain, "too many decimal places in '" + std::string(text) + "'");
    }
    digits += frac;
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    long long den = 1;
    for (std::size_t t = 0; t < frac.size(); ++t) den *= 10;
    return {parse_integer(digits), den};
  }
  return {parse_integer(text), 1};
}

RationalExponent RationalExponent::from_double(double k, long long max_denominator) {
  if (!std::isfinite(k)) {
    throw DomainError(ErrorCode::IrrationalExponent, "exponent is not finite");
  }
  // Continued-fraction convergents; accept the first one that reproduces k exactly.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rest = k;
  for (int step = 0; step < 64; ++step) {
    const double whole = std::floor(rest);
    if (std::abs(whole) > 9e15) break;
    const auto a = static_cast<long long>(whole);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_denominator) break;
    if (static_cast<double>(p2) / static_cast<double>(q2) == k) return {p2, q2};
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = rest - whole;
    if (frac == 0.0) break;
    rest = 1.0 / frac;
  }
  throw DomainError(ErrorCode::IrrationalExponent,
                    "no exact rational with small denominator reproduces k; "
                    "certificates need rational exponents");
}

std::string RationalExponent::str() const {
  return std::to_string(u_) + "/" + std::to_string(v_);
}

RatioVector RatioVector::from_x(std::span<const double> x) {
  const std::size_t n = x.size();
  RatioVector out;
  out.a.resize(n);
  out.b.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0)) throw DomainError(ErrorCode::NonPositiveInput, "x must be positive");
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.a[i] = x[i] / x[(i + 1) % n];
    out.b[i] = x[(i + 1) % n] / x[i];
  }
  return out;
}

double RatioVector::product() const {
  double log_sum = 0;
  for (double ai : a) log_sum += std::log(ai);
  return std::exp(log_sum);
}

std::vector<int> IndexInterval::members(int n) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(length));
  for (int t = 0; t < length; ++t) out.push_back(wrap_index(start + t, n));
  return out;
}

std::vector<IndexInterval> ratio_rewrite(const Permutation& sigma) {
  std::vector<IndexInterval> out;
  for (int i = 1; i <= sigma.size(); ++i) out.push_back({i, forward_displacement(sigma, i)});
  return out;
}

BlockDecomposition cyclic_blocks(const Permutation& sigma) {
  const CycleDecomposition cycles = cycle_decomposition(sigma);
  BlockDecomposition out;
  out.fixed_count = static_cast<int>(cycles.fixed_points.size());
  for (const auto& cycle : cycles.cycles) {
    CyclicBlock block;
    for (int i : cycle) block.fractions.emplace_back(i, sigma(i));
    block.sorting.resize(cycle.size());
    std::iota(block.sorting.begin(), block.sorting.end(), 1);
    out.blocks.push_back(std::move(block));
  }
  return out;
}

std::optional<std::vector<int>> is_cyclically_constructed(std::span<const Fraction> fractions) {
  const std::size_t m = fractions.size();
  if (m == 0) return std::nullopt;

  // Hierholzer over the multigraph numerator -> denominator, edges taken in
  // ascending position so the result is deterministic.
  int max_index = 0;
  for (const auto& [num, den] : fractions) max_index = std::max({max_index, num, den});
  std::vector<std::vector<std::size_t>> out_edges(static_cast<std::size_t>(max_index) + 1);
  std::vector<int> balance(static_cast<std::size_t>(max_index) + 1, 0);
  for (std::size_t e = 0; e < m; ++e) {
    out_edges[static_cast<std::size_t>(fractions[e].first)].push_back(e);
    ++balance[static_cast<std::size_t>(fractions[e].first)];
    --balance[static_cast<std::size_t>(fractions[e].second)];
  }
  for (int b : balance) {
    if (b != 0) return std::nullopt;
  }

  std::size_t start = 0;
  for (std::size_t e = 1; e < m; ++e) {
    if (fractions[e].first < fractions[start].first) start = e;
  }

  std::vector<std::size_t> next_edge(out_edges.size(), 0);
  std::vector<bool> used(m, false);
  // Move the chosen start edge to the front of its vertex's list.
  auto& first_list = out_edges[static_cast<std::size_t>(fractions[start].first)];
  std::erase(first_list, start);
  first_list.insert(first_list.begin(), start);

  std::vector<std::size_t> circuit;
  std::vector<std::pair<int, std::size_t>> stack;  // (vertex, edge used to reach it)
  stack.emplace_back(fractions[start].first, m);
  while (!stack.empty()) {
    const auto vertex = static_cast<std::size_t>(stack.back().first);
    auto& cursor = next_edge[vertex];
    while (cursor < out_edges[vertex].size() && used[out_edges[vertex][cursor]]) ++cursor;
    if (cursor < out_edges[vertex].size()) {
      const std::size_t e = out_edges[vertex][cursor];
      used[e] = true;
      stack.emplace_back(fractions[e].second, e);
    } else {
      if (stack.back().second != m) circuit.push_back(stack.back().second);
      stack.pop_back();
    }
  }
  if (circuit.size() != m) return std::nullopt;
  std::vector<int> sorting;
  sorting.reserve(m);
  for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
    sorting.push_back(static_cast<int>(*it) + 1);
  }
  return sorting;
}

std::vector<int> expand_block(const CyclicBlock& block, int n) {
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  for (const auto& [num, den] : block.fractions) {
    for (int j = num; j != den; j = wrap_index(j + 1, n)) ++counts[static_cast<std::size_t>(j - 1)];
  }
  return counts;
}

namespace {

// Intervals of the alphabet each right-hand summand spans: a-intervals start
// at i, b-intervals end just before i (x_i / x_s = b_s b_{s+1} ... b_{i-1}).
std::vector<IndexInterval> alphabet_intervals(const Permutation& sigma, Alphabet alphabet) {
  if (alphabet == Alphabet::A) return ratio_rewrite(sigma);
  std::vector<IndexInterval> out;
  for (int i = 1; i <= sigma.size(); ++i) out.push_back({sigma(i), backward_displacement(sigma, i)});
  return out;
}

// Kuhn's augmenting paths on summands x symbols, symbols tried in ascending order.
class SectionFinder {
 public:
  explicit SectionFinder(const std::vector<std::vector<long long>>& counts)
      : counts_(counts), n_(counts.size()) {}

  std::optional<std::vector<int>> find() {
    owner_.assign(n_, -1);
    for (std::size_t i = 0; i < n_; ++i) {
      visited_.assign(n_, false);
      if (!augment(i)) return std::nullopt;
    }
    std::vector<int> round(n_);
    for (std::size_t j = 0; j < n_; ++j) round[static_cast<std::size_t>(owner_[j])] = static_cast<int>(j) + 1;
    return round;
  }

 private:
  bool augment(std::size_t i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (counts_[i][j] <= 0 || visited_[j]) continue;
      visited_[j] = true;
      if (owner_[j] < 0 || augment(static_cast<std::size_t>(owner_[j]))) {
        owner_[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<long long>>& counts_;
  std::size_t n_;
  std::vector<int> owner_;
  std::vector<bool> visited_;
};

}  // namespace

DecompositionCertificate build_certificate(const Permutation& sigma, const RationalExponent& k) {
  const int n = sigma.size();
  const ExponentVerdict verdict = admissible_exponents(sigma);
  const long long u = k.u();
  const long long v = k.v();
  const bool positive_branch = u >= verdict.d_plus * v;
  const bool negative_branch = -u >= verdict.d_minus * v;
  if (!positive_branch && !negative_branch) {
    throw DomainError(ErrorCode::NotAdmissible,
                      "k = " + k.str() + " is outside k >= " + std::to_string(verdict.d_plus) +
                          " or k <= -" + std::to_string(verdict.d_minus));
  }

  DecompositionCertificate cert;
  cert.n = n;
  cert.u = u;
  cert.v = v;
  cert.alphabet = u >= 0 ? Alphabet::A : Alphabet::B;
  const long long magnitude = u >= 0 ? u : -u;

  // Exponent of letter j in summand i is [j in I_i] + (|k| - |I_i|) / n; in
  // units of 1/(v n) that is v n [j in I_i] + |u| - v |I_i|.
  const auto intervals = alphabet_intervals(sigma, cert.alphabet);
  cert.summands.assign(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
  for (int i = 1; i <= n; ++i) {
    auto& row = cert.summands[static_cast<std::size_t>(i - 1)];
    const IndexInterval& interval = intervals[static_cast<std::size_t>(i - 1)];
    for (auto& c : row) c = magnitude - v * interval.length;
    for (int j : interval.members(n)) row[static_cast<std::size_t>(j - 1)] += v * n;
  }

  auto remaining = cert.summands;
  for (long long r = 0; r < cert.copies(); ++r) {
    auto section = SectionFinder(remaining).find();
    if (!section) {
      throw DomainError(ErrorCode::MatchingFailed,
                        "no system of distinct representatives in round " + std::to_string(r));
    }
    for (int i = 0; i < n; ++i) {
      --remaining[static_cast<std::size_t>(i)][static_cast<std::size_t>((*section)[static_cast<std::size_t>(i)] - 1)];
    }
    cert.rounds.push_back(std::move(*section));
  }
  return cert;
}

DecompositionCertificate build_certificate(const Permutation& sigma, double k) {
  return build_certificate(sigma, RationalExponent::from_double(k));
}

std::string_view to_string(Diagnosis d) noexcept {
  switch (d) {
    case Diagnosis::Ok: return "Ok";
    case Diagnosis::Malformed: return "Malformed";
    case Diagnosis::BadColumnSum: return "BadColumnSum";
    case Diagnosis::BadExponentIdentity: return "BadExponentIdentity";
    case Diagnosis::BadRounds: return "BadRounds";
  }
  return "Unknown";
}

CertificateCheck check_certificate(const DecompositionCertificate& cert, const Permutation& sigma) {
  const int n = sigma.size();
  const auto un = static_cast<std::size_t>(n);
  auto fail = [](Diagnosis d, std::string detail) { return CertificateCheck{d, std::move(detail)}; };

  if (cert.n != n || cert.v <= 0 || cert.summands.size() != un) {
    return fail(Diagnosis::Malformed, "dimension or denominator mismatch");
  }
  for (const auto& row : cert.summands) {
    if (row.size() != un) return fail(Diagnosis::Malformed, "summand table has wrong width");
  }
  if (std::gcd(cert.u < 0 ? -cert.u : cert.u, cert.v) != 1) {
    return fail(Diagnosis::Malformed, "u/v not in lowest terms");
  }
  const long long copies = cert.copies();

  // Equal multiplicity: every symbol appears |u| n times across all summands.
  for (std::size_t j = 0; j < un; ++j) {
    long long column = 0;
    for (std::size_t i = 0; i < un; ++i) column += cert.summands[i][j];
    if (column != copies) {
      return fail(Diagnosis::BadColumnSum, "symbol " + std::to_string(j + 1) + " appears " +
                                               std::to_string(column) + " times, expected " +
                                               std::to_string(copies));
    }
  }

  // Exponent identity in exact rationals. The span of summand i is found by
  // walking the alphabet from its first letter until the telescoped fraction
  // x_i / x_{sigma(i)} is reached.
  const bool expect_b = cert.u < 0;
  if ((cert.alphabet == Alphabet::B) != expect_b) {
    return fail(Diagnosis::BadExponentIdentity, "alphabet does not match the sign of k");
  }
  const Rational k_abs(cert.u < 0 ? -cert.u : cert.u, cert.v);
  const Rational unit(1, cert.v * n);
  for (int i = 1; i <= n; ++i) {
    std::vector<int> in_span(un, 0);
    int length = 0;
    // a: x_i/x_s = a_i ... a_{s-1};  b: x_i/x_s = b_s ... b_{i-1}.
    const int first = expect_b ? sigma(i) : i;
    const int stop = expect_b ? i : sigma(i);
    for (int j = first; j != stop; j = j % n + 1) {
      in_span[static_cast<std::size_t>(j - 1)] = 1;
      ++length;
    }
    const Rational balance = (k_abs - length) / Rational(n);
    for (int j = 1; j <= n; ++j) {
      const long long c = cert.summands[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
      const Rational expected = Rational(in_span[static_cast<std::size_t>(j - 1)]) + balance;
      if (c < 0 || unit * c != expected) {
        return fail(Diagnosis::BadExponentIdentity,
                    "summand " + std::to_string(i) + ", symbol " + std::to_string(j) +
                        ": exponent does not match the rewrite of x_i / x_sigma(i)");
      }
    }
  }

  // Rounds: |u| n bijections whose tallies reproduce every count.
  if (static_cast<long long>(cert.rounds.size()) != copies) {
    return fail(Diagnosis::BadRounds, "expected " + std::to_string(copies) + " rounds, got " +
                                          std::to_string(cert.rounds.size()));
  }
  std::vector<std::vector<long long>> tally(un, std::vector<long long>(un, 0));
  for (std::size_t r = 0; r < cert.rounds.size(); ++r) {
    const auto& round = cert.rounds[r];
    if (round.size() != un) return fail(Diagnosis::BadRounds, "round " + std::to_string(r) + " has wrong size");
    std::vector<bool> hit(un, false);
    for (std::size_t i = 0; i < un; ++i) {
      const int j = round[i];
      if (j < 1 || j > n || hit[static_cast<std::size_t>(j - 1)]) {
        return fail(Diagnosis::BadRounds, "round " + std::to_string(r) + " is not a bijection");
      }
      hit[static_cast<std::size_t>(j - 1)] = true;
      ++tally[i][static_cast<std::size_t>(j - 1)];
    }
  }
  if (tally != cert.summands) return fail(Diagnosis::BadRounds, "rounds do not partition the counts");
  return {};
}

namespace {

const std::vector<double>& letters(const DecompositionCertificate& cert, const RatioVector& ratios) {
  if (ratios.size() != cert.n) throw DomainError(ErrorCode::DimensionMismatch, "ratio vector size != n");
  return cert.alphabet == Alphabet::A ? ratios.a : ratios.b;
}

}  // namespace

std::vector<double> summand_values(const DecompositionCertificate& cert, const RatioVector& ratios) {
  const auto& letter = letters(cert, ratios);
  const double scale = 1.0 / static_cast<double>(cert.v * cert.n);
  std::vector<double> out;
  for (const auto& row : cert.summands) {
    double log_value = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      log_value += static_cast<double>(row[j]) * scale * std::log(letter[j]);
    }
    out.push_back(std::exp(log_value));
  }
  return out;
}

double rounds_value(const DecompositionCertificate& cert, const RatioVector& ratios) {
  const auto& letter = letters(cert, ratios);
  const double scale = 1.0 / static_cast<double>(cert.v * cert.n);
  std::vector<double> log_value(static_cast<std::size_t>(cert.n), 0.0);
  for (const auto& round : cert.rounds) {
    for (std::size_t i = 0; i < round.size(); ++i) {
      log_value[i] += scale * std::log(letter[static_cast<std::size_t>(round[i] - 1)]);
    }
  }
  double sum = 0;
  for (double lv : log_value) sum += std::exp(lv);
  return sum;
}

double rearrangement_lhs(const DecompositionCertificate& cert, const RatioVector& ratios) {
  const auto& letter = letters(cert, ratios);
  const double power = static_cast<double>(cert.copies()) / static_cast<double>(cert.v * cert.n);
  double sum = 0;
  for (double l : letter) sum += std::exp(power * std::log(l));
  return sum;
}

}  // namespace cyclineq
