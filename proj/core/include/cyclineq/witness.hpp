#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclineq/permutation.hpp"

namespace cyclineq {

// Exact exponent k = u / v with v > 0 and gcd(|u|, v) = 1.
class RationalExponent {
 public:
  RationalExponent(long long u, long long v);

  // Accepts "u/v", an integer, or a terminating decimal ("0.25").
  static RationalExponent parse(std::string_view text);
  // Exact recovery of a double with denominator <= max_denominator; throws
  // DomainError(IrrationalExponent) when no such fraction reproduces k.
  static RationalExponent from_double(double k, long long max_denominator = 1000000);

  long long u() const noexcept { return u_; }
  long long v() const noexcept { return v_; }
  double value() const noexcept { return static_cast<double>(u_) / static_cast<double>(v_); }
  std::string str() const;

  friend bool operator==(const RationalExponent&, const RationalExponent&) = default;

 private:
  long long u_;
  long long v_;
};

// a_i = x_i / x_{i+1} (cyclic) and b_i = 1 / a_i.
struct RatioVector {
  std::vector<double> a;
  std::vector<double> b;

  static RatioVector from_x(std::span<const double> x);
  int size() const noexcept { return static_cast<int>(a.size()); }
  double product() const;
};

// The cyclic run of alphabet symbols start, start+1, ..., start+length-1.
struct IndexInterval {
  int start = 1;
  int length = 0;

  std::vector<int> members(int n) const;
};

// x_i / x_{sigma(i)} = prod_{j in interval_i} a_j; interval i starts at i and
// has length forward_displacement(sigma, i).
std::vector<IndexInterval> ratio_rewrite(const Permutation& sigma);

// (numerator index, denominator index) of x_num / x_den.
using Fraction = std::pair<int, int>;

struct CyclicBlock {
  std::vector<Fraction> fractions;
  std::vector<int> sorting;  // 1-based gamma: fractions[gamma(t)] in cyclic order
};

struct BlockDecomposition {
  int fixed_count = 0;  // each fixed point contributes x_i / x_i = 1
  std::vector<CyclicBlock> blocks;
};

BlockDecomposition cyclic_blocks(const Permutation& sigma);

// Sorting gamma with den(gamma(t)) == num(gamma(t+1)) cyclically, if one exists.
// The walk starts at the fraction with the smallest numerator index.
std::optional<std::vector<int>> is_cyclically_constructed(std::span<const Fraction> fractions);

// Multiplicity of each a_1..a_n after expanding every fraction of the block
// as a product of consecutive ratios.
std::vector<int> expand_block(const CyclicBlock& block, int n);

enum class Alphabet { A, B };

// Counts are multiplicities of a_j^{1/(v n)} (or b_j^{1/(v n)} for negative
// exponents) in each right-hand summand; every summand has |u| n factors and
// every round picks one factor per summand, distinct symbols across summands.
struct DecompositionCertificate {
  int n = 0;
  long long u = 0;  // signed numerator of k
  long long v = 1;
  Alphabet alphabet = Alphabet::A;
  std::vector<std::vector<long long>> summands;  // n x n
  std::vector<std::vector<int>> rounds;          // |u| n rounds, each n symbols (1-based)

  long long copies() const noexcept { return (u < 0 ? -u : u) * n; }
};

DecompositionCertificate build_certificate(const Permutation& sigma, const RationalExponent& k);
// Recovers an exact rational first; DomainError(IrrationalExponent) otherwise.
DecompositionCertificate build_certificate(const Permutation& sigma, double k);

enum class Diagnosis { Ok, Malformed, BadColumnSum, BadExponentIdentity, BadRounds };

std::string_view to_string(Diagnosis d) noexcept;

struct CertificateCheck {
  Diagnosis diagnosis = Diagnosis::Ok;
  std::string detail;

  bool ok() const noexcept { return diagnosis == Diagnosis::Ok; }
  explicit operator bool() const noexcept { return ok(); }
};

CertificateCheck check_certificate(const DecompositionCertificate& cert, const Permutation& sigma);

// Numeric readings of a certificate at a concrete ratio vector.
std::vector<double> summand_values(const DecompositionCertificate& cert, const RatioVector& ratios);
// Same right-hand side, assembled round by round instead of from the counts.
double rounds_value(const DecompositionCertificate& cert, const RatioVector& ratios);
// Left side sum_i (letter_i^{1/(vn)})^{|u| n} of the rearrangement form.
double rearrangement_lhs(const DecompositionCertificate& cert, const RatioVector& ratios);

}  // namespace cyclineq
