#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace cyclineq {

// A bijection of {1,...,n}, n > 1. All indices crossing the public surface are
// 1-based; image(i) is sigma(i).
class Permutation {
 public:
  // Throws DomainError (BadDimension, NotABijection).
  Permutation(int n, std::span<const int> images);
  explicit Permutation(std::span<const int> images)
      : Permutation(static_cast<int>(images.size()), images) {}

  static Permutation identity(int n);
  // i -> i + s (mod n), represented in {1,...,n}. Negative s allowed.
  static Permutation shift(int n, long long s);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const;
  const std::vector<int>& images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  // sigma^2 = id, i.e. a product of disjoint transpositions (identity included).
  bool is_involution() const noexcept;
  Permutation squared() const;
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

// Maps any integer onto its representative in {1,...,n}.
constexpr int wrap_index(long long i, int n) noexcept {
  long long r = (i - 1) % n;
  if (r < 0) r += n;
  return static_cast<int>(r) + 1;
}

struct CycleDecomposition {
  std::vector<int> fixed_points;        // ascending
  std::vector<std::vector<int>> cycles; // each [i, sigma(i), ..., sigma^m(i)], length >= 2
};

// Fixed points first, then orbits in order of the smallest index not yet used.
CycleDecomposition cycle_decomposition(const Permutation& sigma);

// Inverse of cycle_decomposition.
Permutation recompose(int n, const CycleDecomposition& decomposition);

// (sigma(i) - i) mod n in {0,...,n-1}; equals sigma(i) - i + Delta_n(i).
int forward_displacement(const Permutation& sigma, int i);
// (i - sigma(i)) mod n in {0,...,n-1}.
int backward_displacement(const Permutation& sigma, int i);

int max_forward_displacement(const Permutation& sigma);
int max_backward_displacement(const Permutation& sigma);

// Visits all of S_n in lexicographic order of the image arrays.
template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  do {
    fn(Permutation(n, images));
  } while (std::next_permutation(images.begin(), images.end()));
}

}  // namespace cyclineq
