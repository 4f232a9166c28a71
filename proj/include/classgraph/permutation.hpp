#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "classgraph/error.hpp"

namespace classgraph {

using Point = std::uint32_t;

/// Bijection on {0, ..., degree-1}. Products compose right to left:
/// (a * b)(x) = a(b(x)).
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p]) {
        throw Error(ErrorKind::InvalidArgument, "image list is not a bijection on 0.." +
                                                    std::to_string(images_.size() - 1));
      }
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    Permutation p;
    p.images_.resize(degree);
    std::iota(p.images_.begin(), p.images_.end(), Point{0});
    return p;
  }

  /// Builds from disjoint cycles, e.g. {{0, 1, 2}} for (0 1 2).
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
    auto p = identity(degree);
    for (const auto& cycle : cycles) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        p.images_.at(cycle[i]) = cycle[(i + 1) % cycle.size()];
      }
    }
    return Permutation(std::move(p.images_));
  }

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    Permutation inv;
    inv.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv.images_[images_[i]] = static_cast<Point>(i);
    return inv;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    Permutation out;
    out.images_.resize(a.images_.size());
    for (std::size_t i = 0; i < b.images_.size(); ++i) out.images_[i] = a.images_[b.images_[i]];
    return out;
  }

  /// g * x * g^-1
  Permutation conjugated_by(const Permutation& g) const {
    Permutation out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out.images_[g.images_[i]] = g.images_[images_[i]];
    return out;
  }

  bool commutes_with(const Permutation& other) const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[other.images_[i]] != other.images_[images_[i]]) return false;
    }
    return true;
  }

  /// Element order: lcm of cycle lengths.
  std::uint64_t order() const {
    std::vector<bool> seen(images_.size(), false);
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace classgraph
