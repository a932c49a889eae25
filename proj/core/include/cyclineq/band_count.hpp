#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace cyclineq {

using BigInt = boost::multiprecision::cpp_int;

// Circulant 0/1 board: entry (i, j) is allowed iff (j - i) mod n <= k.
class BandMatrix {
 public:
  BandMatrix(int n, int k);

  int size() const noexcept { return n_; }
  int band() const noexcept { return k_; }
  bool allowed(int i, int j) const noexcept;  // 1-based
  std::vector<std::vector<std::uint8_t>> entries() const;

 private:
  int n_;
  int k_;
};

inline constexpr int kMaxPermanentN = 24;
inline constexpr int kMaxBruteForceN = 9;

// Number of sigma in S_n with every forward displacement <= k, as the
// permanent of BandMatrix(n, k) (Ryser, Gray-code order). Threads split the
// subset range; partial sums are added in chunk order.
BigInt count_band_permutations(int n, int k, int threads = 1);

// Exhaustive enumeration of S_n; n <= kMaxBruteForceN.
BigInt brute_force_count(int n, int k);

BigInt lucas(int n);

struct LucasRow {
  int n;
  BigInt band_count;  // P_{n,2}
  BigInt shifted_lucas;  // 2 + L_n
  bool match;
};

std::vector<LucasRow> lucas_identity_report(int n_max, int threads = 1);

}  // namespace cyclineq
