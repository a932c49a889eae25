#include "cyclineq/band_count.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>
#include <thread>

#include "cyclineq/errors.hpp"
#include "cyclineq/permutation.hpp"

namespace cyclineq {

namespace {

__extension__ using Int128 = __int128;

void require_args(int n, int k) {
  if (n <= 1) throw DomainError(ErrorCode::BadDimension, "need n > 1, got " + std::to_string(n));
  if (k < 0) throw DomainError(ErrorCode::OutOfDomain, "need k >= 0, got " + std::to_string(k));
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Ryser over subsets with Gray-code indices in [begin, end). Returns the signed
// partial sum of (-1)^{|S|} prod_i rowsum_i(S).
BigInt ryser_chunk(const std::vector<std::uint32_t>& row_masks, int n, std::uint64_t begin, std::uint64_t end) {
  std::vector<int> row_sum(static_cast<std::size_t>(n), 0);
  std::uint64_t prev = begin ^ (begin >> 1);
  for (int j = 0; j < n; ++j) {
    if (prev >> j & 1U) {
      for (int i = 0; i < n; ++i) row_sum[static_cast<std::size_t>(i)] += static_cast<int>(row_masks[static_cast<std::size_t>(i)] >> j & 1U);
    }
  }
  BigInt total = 0;
  for (std::uint64_t g = begin; g < end; ++g) {
    const std::uint64_t gray = g ^ (g >> 1);
    if (g != begin) {
      const std::uint64_t flipped = gray ^ prev;
      const int j = std::countr_zero(flipped);
      const int delta = (gray & flipped) ? 1 : -1;
      for (int i = 0; i < n; ++i) {
        if (row_masks[static_cast<std::size_t>(i)] >> j & 1U) row_sum[static_cast<std::size_t>(i)] += delta;
      }
      prev = gray;
    }
    if (gray == 0) continue;
    Int128 product = 1;
    for (int i = 0; i < n && product != 0; ++i) product *= row_sum[static_cast<std::size_t>(i)];
    if (product == 0) continue;
    const bool odd = std::popcount(gray) % 2 == 1;
    // |product| <= 24^24 < 2^111, exact in __int128
    BigInt term = static_cast<std::uint64_t>(product >> 64);
    term <<= 64;
    term += static_cast<std::uint64_t>(product & 0xFFFFFFFFFFFFFFFFULL);
    if (odd) total -= term;
    else total += term;
  }
  return total;
}

}  // namespace

BandMatrix::BandMatrix(int n, int k) : n_(n), k_(k) { require_args(n, k); }

bool BandMatrix::allowed(int i, int j) const noexcept {
  return ((j - i) % n_ + n_) % n_ <= k_;
}

std::vector<std::vector<std::uint8_t>> BandMatrix::entries() const {
  std::vector<std::vector<std::uint8_t>> out(static_cast<std::size_t>(n_), std::vector<std::uint8_t>(static_cast<std::size_t>(n_)));
  for (int i = 1; i <= n_; ++i) {
    for (int j = 1; j <= n_; ++j) out[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = allowed(i, j) ? 1 : 0;
  }
  return out;
}

BigInt count_band_permutations(int n, int k, int threads) {
  require_args(n, k);
  if (k >= n - 1) return factorial(n);
  if (n > kMaxPermanentN) {
    throw DomainError(ErrorCode::BudgetExceeded,
                      "permanent limited to n <= " + std::to_string(kMaxPermanentN));
  }
  const BandMatrix board(n, k);
  std::vector<std::uint32_t> row_masks(static_cast<std::size_t>(n), 0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (board.allowed(i, j)) row_masks[static_cast<std::size_t>(i - 1)] |= 1U << (j - 1);
    }
  }
  const std::uint64_t subsets = std::uint64_t{1} << n;
  const int chunks = std::clamp(threads, 1, 64);
  std::vector<BigInt> partial(static_cast<std::size_t>(chunks));
  auto bounds = [&](int c) { return subsets / static_cast<std::uint64_t>(chunks) * static_cast<std::uint64_t>(c); };
  if (chunks == 1) {
    partial[0] = ryser_chunk(row_masks, n, 0, subsets);
  } else {
    std::vector<std::jthread> pool;
    for (int c = 0; c < chunks; ++c) {
      const std::uint64_t end = c + 1 == chunks ? subsets : bounds(c + 1);
      pool.emplace_back([&, c, end] { partial[static_cast<std::size_t>(c)] = ryser_chunk(row_masks, n, bounds(c), end); });
    }
  }
  BigInt total = 0;
  for (const auto& p : partial) total += p;
  return n % 2 == 0 ? total : BigInt(-total);
}

BigInt brute_force_count(int n, int k) {
  require_args(n, k);
  if (n > kMaxBruteForceN) {
    throw DomainError(ErrorCode::BudgetExceeded,
                      "brute force limited to n <= " + std::to_string(kMaxBruteForceN));
  }
  BigInt count = 0;
  for_each_permutation(n, [&](const Permutation& sigma) {
    if (max_forward_displacement(sigma) <= k) ++count;
  });
  return count;
}

BigInt lucas(int n) {
  if (n < 0) throw DomainError(ErrorCode::OutOfDomain, "lucas needs n >= 0");
  BigInt prev = 2, cur = 1;
  if (n == 0) return prev;
  for (int i = 1; i < n; ++i) {
    BigInt next = prev + cur;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<LucasRow> lucas_identity_report(int n_max, int threads) {
  std::vector<LucasRow> rows;
  for (int n = 2; n <= n_max; ++n) {
    LucasRow row{n, count_band_permutations(n, 2, threads), 2 + lucas(n), false};
    row.match = row.band_count == row.shifted_lucas;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cyclineq
