#include "cyclineq/permutation.hpp"

#include <string>

#include "cyclineq/errors.hpp"

namespace cyclineq {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotABijection: return "NotABijection";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::IrrationalExponent: return "IrrationalExponent";
    case ErrorCode::MatchingFailed: return "MatchingFailed";
    case ErrorCode::NotRefutable: return "NotRefutable";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Permutation::Permutation(int n, std::span<const int> images) {
  if (n <= 1) {
    throw DomainError(ErrorCode::BadDimension,
                      "permutation needs n > 1, got n = " + std::to_string(n));
  }
  if (images.size() != static_cast<std::size_t>(n)) {
    throw DomainError(ErrorCode::BadDimension,
                      "expected " + std::to_string(n) + " images, got " +
                          std::to_string(images.size()));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : images) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw DomainError(ErrorCode::NotABijection,
                        "value " + std::to_string(v) +
                            " repeated or outside {1,...," + std::to_string(n) + "}");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  images_.assign(images.begin(), images.end());
}

Permutation Permutation::identity(int n) { return shift(n, 0); }

Permutation Permutation::shift(int n, long long s) {
  if (n <= 1) {
    throw DomainError(ErrorCode::BadDimension,
                      "permutation needs n > 1, got n = " + std::to_string(n));
  }
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) images[static_cast<std::size_t>(i - 1)] = wrap_index(i + s, n);
  return Permutation(n, images);
}

int Permutation::operator()(int i) const {
  if (i < 1 || i > size()) {
    throw DomainError(ErrorCode::IndexOutOfRange,
                      "index " + std::to_string(i) + " outside {1,...," +
                          std::to_string(size()) + "}");
  }
  return images_[static_cast<std::size_t>(i - 1)];
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

bool Permutation::is_involution() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    int j = images_[i];
    if (images_[static_cast<std::size_t>(j - 1)] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

Permutation Permutation::squared() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    out[i] = images_[static_cast<std::size_t>(images_[i] - 1)];
  }
  return Permutation(size(), out);
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    out[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i) + 1;
  }
  return Permutation(size(), out);
}

CycleDecomposition cycle_decomposition(const Permutation& sigma) {
  const int n = sigma.size();
  CycleDecomposition out;
  std::vector<bool> excluded(static_cast<std::size_t>(n) + 1, false);
  for (int i = 1; i <= n; ++i) {
    if (sigma(i) == i) {
      out.fixed_points.push_back(i);
      excluded[static_cast<std::size_t>(i)] = true;
    }
  }
  for (int i = 1; i <= n; ++i) {
    if (excluded[static_cast<std::size_t>(i)]) continue;
    std::vector<int> cycle;
    for (int j = i; !excluded[static_cast<std::size_t>(j)]; j = sigma(j)) {
      excluded[static_cast<std::size_t>(j)] = true;
      cycle.push_back(j);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

Permutation recompose(int n, const CycleDecomposition& decomposition) {
  std::vector<int> images(static_cast<std::size_t>(n > 0 ? n : 0), 0);
  auto set = [&](int from, int to) {
    if (from < 1 || from > n || images[static_cast<std::size_t>(from - 1)] != 0) {
      throw DomainError(ErrorCode::NotABijection, "decomposition is not a partition");
    }
    images[static_cast<std::size_t>(from - 1)] = to;
  };
  for (int f : decomposition.fixed_points) set(f, f);
  for (const auto& cycle : decomposition.cycles) {
    for (std::size_t t = 0; t < cycle.size(); ++t) set(cycle[t], cycle[(t + 1) % cycle.size()]);
  }
  return Permutation(n, images);
}

int forward_displacement(const Permutation& sigma, int i) {
  const int n = sigma.size();
  const int s = sigma(i);
  return i <= s ? s - i : n + s - i;
}

int backward_displacement(const Permutation& sigma, int i) {
  const int n = sigma.size();
  const int s = sigma(i);
  return i >= s ? i - s : n + i - s;
}

int max_forward_displacement(const Permutation& sigma) {
  int best = 0;
  for (int i = 1; i <= sigma.size(); ++i) best = std::max(best, forward_displacement(sigma, i));
  return best;
}

int max_backward_displacement(const Permutation& sigma) {
  int best = 0;
  for (int i = 1; i <= sigma.size(); ++i) best = std::max(best, backward_displacement(sigma, i));
  return best;
}

}  // namespace cyclineq
