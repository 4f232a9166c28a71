#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace classgraph {

/// Multiset of conjugacy class sizes, stored as size -> number of classes.
using Spectrum = std::map<std::uint64_t, std::uint64_t>;

inline Spectrum spectrum_from_list(std::span<const std::uint64_t> sizes) {
  Spectrum s;
  for (auto v : sizes) ++s[v];
  return s;
}

/// Ascending list with multiplicities.
inline std::vector<std::uint64_t> spectrum_to_list(const Spectrum& s) {
  std::vector<std::uint64_t> out;
  for (const auto& [size, count] : s) out.insert(out.end(), count, size);
  return out;
}

/// Sum of all class sizes, i.e. the group order.
inline std::uint64_t spectrum_total(const Spectrum& s) {
  std::uint64_t total = 0;
  for (const auto& [size, count] : s) total += size * count;
  return total;
}

inline std::uint64_t class_count(const Spectrum& s) {
  std::uint64_t total = 0;
  for (const auto& [size, count] : s) total += count;
  return total;
}

inline std::set<std::uint64_t> size_set(const Spectrum& s) {
  std::set<std::uint64_t> out;
  for (const auto& [size, count] : s) out.insert(size);
  return out;
}

/// Spectrum of a direct product: classes of G x H are pairs of classes.
inline Spectrum spectrum_product(const Spectrum& a, const Spectrum& b) {
  Spectrum out;
  for (const auto& [sa, ca] : a) {
    for (const auto& [sb, cb] : b) out[sa * sb] += ca * cb;
  }
  return out;
}

}  // namespace classgraph
