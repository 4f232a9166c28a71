#pragma once

// Brute-force finite group engine over explicit permutation generators.
//
// Everything here works on the fully enumerated element list: subgroups are
// explicit element sets and normality is checked by conjugating with the
// generators. There is no stabilizer chain; the intended scale is groups of
// up to about a million elements. This engine is the trusted oracle that the
// structured fast paths are checked against.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "classgraph/error.hpp"
#include "classgraph/number_theory.hpp"
#include "classgraph/permutation.hpp"
#include "classgraph/spectrum.hpp"

namespace classgraph {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Subgroup given by its elements, sorted lexicographically by image list.
struct SubgroupWitness {
  std::vector<Permutation> elements;
  bool is_normal = false;

  std::uint64_t order() const { return elements.size(); }
  bool contains(const Permutation& p) const { return std::binary_search(elements.begin(), elements.end(), p); }
};

struct ConjugacyClass {
  Permutation representative;
  std::uint64_t size = 0;
  std::vector<Permutation> members;
};

class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators)
      : degree_(degree), generators_(std::move(generators)) {
    if (degree_ == 0) throw Error(ErrorKind::InvalidArgument, "degree must be positive");
    if (generators_.empty()) generators_.push_back(Permutation::identity(degree_));
    for (const auto& g : generators_) {
      if (g.degree() != degree_) {
        throw Error(ErrorKind::InvalidArgument, "generator of degree " + std::to_string(g.degree()) +
                                                    " in a group of degree " + std::to_string(degree_));
      }
    }
  }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  bool is_enumerated() const { return !elements_.empty(); }

  /// Breadth-first closure of the generators, then sorted. Idempotent.
  const std::vector<Permutation>& enumerate(std::size_t cap = kDefaultEnumerationCap) {
    if (is_enumerated()) return elements_;
    if (cap == 0) throw Error(ErrorKind::InvalidArgument, "enumeration cap must be positive");
    std::unordered_map<Permutation, std::size_t, PermutationHash> seen;
    std::vector<Permutation> found{Permutation::identity(degree_)};
    seen.emplace(found.front(), 0);
    for (std::size_t head = 0; head < found.size(); ++head) {
      for (const auto& g : generators_) {
        Permutation next = found[head] * g;
        if (seen.count(next) != 0) continue;
        if (found.size() >= cap) {
          throw Error(ErrorKind::CapExceeded,
                      "group closure exceeds the enumeration cap of " + std::to_string(cap) + " elements");
        }
        seen.emplace(next, found.size());
        found.push_back(std::move(next));
      }
    }
    std::sort(found.begin(), found.end());
    index_.clear();
    index_.reserve(found.size());
    for (std::size_t i = 0; i < found.size(); ++i) index_.emplace(found[i], i);
    orders_.resize(found.size());
    for (std::size_t i = 0; i < found.size(); ++i) orders_[i] = found[i].order();
    identity_ = index_.at(Permutation::identity(degree_));
    gen_index_.clear();
    for (const auto& g : generators_) gen_index_.push_back(index_.at(g));
    elements_ = std::move(found);
    return elements_;
  }

  const std::vector<Permutation>& elements() const {
    require_enumerated();
    return elements_;
  }

  std::uint64_t order() const {
    require_enumerated();
    return elements_.size();
  }

  std::optional<std::size_t> index_of(const Permutation& p) const {
    require_enumerated();
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const Permutation& p) const { return index_of(p).has_value(); }

  std::size_t identity_index() const {
    require_enumerated();
    return identity_;
  }

  /// Indices of the generators in the sorted element list.
  const std::vector<std::size_t>& generator_indices() const {
    require_enumerated();
    return gen_index_;
  }

  std::uint64_t element_order(std::size_t i) const { return orders_.at(i); }

  std::size_t multiply(std::size_t a, std::size_t b) const { return index_.at(elements_[a] * elements_[b]); }
  std::size_t inverse(std::size_t a) const { return index_.at(elements_[a].inverse()); }
  std::size_t conjugate(std::size_t x, std::size_t by) const {
    return index_.at(elements_[x].conjugated_by(elements_[by]));
  }

 private:
  void require_enumerated() const {
    if (!is_enumerated()) throw Error(ErrorKind::InvalidArgument, "group has not been enumerated");
  }

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
  std::vector<std::uint64_t> orders_;
  std::vector<std::size_t> gen_index_;
  std::size_t identity_ = 0;
};

inline const std::vector<Permutation>& enumerate(PermGroup& group, std::size_t cap = kDefaultEnumerationCap) {
  return group.enumerate(cap);
}

namespace detail {

/// Subgroup generated by the given element indices, as sorted indices.
inline std::vector<std::size_t> closure(const PermGroup& g, const std::vector<std::size_t>& seeds) {
  std::vector<char> member(g.order(), 0);
  std::vector<std::size_t> out{g.identity_index()};
  member[g.identity_index()] = 1;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (std::size_t s : seeds) {
      std::size_t next = g.multiply(out[head], s);
      if (member[next] == 0) {
        member[next] = 1;
        out.push_back(next);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Smallest greedy generating set of a subgroup given by sorted indices.
inline std::vector<std::size_t> generating_subset(const PermGroup& g, const std::vector<std::size_t>& members) {
  std::vector<std::size_t> gens;
  std::vector<std::size_t> current{g.identity_index()};
  for (std::size_t m : members) {
    if (std::binary_search(current.begin(), current.end(), m)) continue;
    gens.push_back(m);
    current = closure(g, gens);
    if (current.size() == members.size()) break;
  }
  return gens;
}

inline bool is_closed(const PermGroup& g, const std::vector<std::size_t>& sorted_members) {
  if (sorted_members.empty()) return false;
  auto gens = generating_subset(g, sorted_members);
  return closure(g, gens) == sorted_members;
}

inline bool is_normal_indices(const PermGroup& g, const std::vector<std::size_t>& sorted_members) {
  for (std::size_t gen : g.generator_indices()) {
    for (std::size_t m : sorted_members) {
      if (!std::binary_search(sorted_members.begin(), sorted_members.end(), g.conjugate(m, gen))) return false;
    }
  }
  return true;
}

inline SubgroupWitness make_witness(const PermGroup& g, const std::vector<std::size_t>& sorted_members) {
  SubgroupWitness w;
  w.elements.reserve(sorted_members.size());
  for (std::size_t i : sorted_members) w.elements.push_back(g.elements()[i]);
  w.is_normal = is_normal_indices(g, sorted_members);
  return w;
}

inline std::vector<std::size_t> indices_of(const PermGroup& g, const std::vector<Permutation>& elements) {
  std::vector<std::size_t> out;
  out.reserve(elements.size());
  for (const auto& e : elements) {
    auto i = g.index_of(e);
    if (!i) throw Error(ErrorKind::ElementNotInGroup, "subset element is not in the group");
    out.push_back(*i);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Class id for every element (by element index) plus the size of each class.
struct ClassMap {
  std::vector<std::uint32_t> class_of;
  std::vector<std::uint64_t> class_size;
  std::vector<std::size_t> representative;
};

/// Conjugation orbits under the generators; classes are numbered in order of
/// their smallest element.
inline ClassMap class_map(const PermGroup& g) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  ClassMap out;
  out.class_of.assign(g.order(), kUnset);
  std::vector<std::size_t> queue;
  for (std::size_t start = 0; start < g.order(); ++start) {
    if (out.class_of[start] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(out.class_size.size());
    queue.assign(1, start);
    out.class_of[start] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::size_t gen : g.generator_indices()) {
        std::size_t next = g.conjugate(queue[head], gen);
        if (out.class_of[next] == kUnset) {
          out.class_of[next] = id;
          queue.push_back(next);
        }
      }
    }
    out.class_size.push_back(queue.size());
    out.representative.push_back(start);
  }
  return out;
}

inline std::vector<ConjugacyClass> conjugacy_classes(const PermGroup& g) {
  auto map = class_map(g);
  std::vector<ConjugacyClass> out(map.class_size.size());
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c].representative = g.elements()[map.representative[c]];
    out[c].size = map.class_size[c];
  }
  for (std::size_t i = 0; i < g.order(); ++i) out[map.class_of[i]].members.push_back(g.elements()[i]);
  return out;
}

inline Spectrum conjugacy_class_sizes(const PermGroup& g) {
  Spectrum s;
  for (auto size : class_map(g).class_size) ++s[size];
  return s;
}

inline SubgroupWitness centralizer(const PermGroup& g, const Permutation& x) {
  if (!g.contains(x)) throw Error(ErrorKind::ElementNotInGroup, "centralizer of an element outside the group");
  SubgroupWitness w;
  for (const auto& h : g.elements()) {
    if (h.commutes_with(x)) w.elements.push_back(h);
  }
  w.is_normal = detail::is_normal_indices(g, detail::indices_of(g, w.elements));
  return w;
}

inline SubgroupWitness center(const PermGroup& g) {
  SubgroupWitness w;
  for (const auto& h : g.elements()) {
    bool central = std::all_of(g.generators().begin(), g.generators().end(),
                               [&](const Permutation& gen) { return h.commutes_with(gen); });
    if (central) w.elements.push_back(h);
  }
  w.is_normal = true;
  return w;
}

/// Normal closure of the commutators of generator pairs.
inline SubgroupWitness derived_subgroup(const PermGroup& g) {
  const auto& gens = g.generator_indices();
  std::vector<std::size_t> seeds;
  for (std::size_t a : gens) {
    for (std::size_t b : gens) {
      // [a, b] = a^-1 b^-1 a b
      std::size_t c = g.multiply(g.multiply(g.inverse(a), g.inverse(b)), g.multiply(a, b));
      if (c != g.identity_index()) seeds.push_back(c);
    }
  }
  auto members = detail::closure(g, seeds);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t s = 0; s < seeds.size() && !grew; ++s) {
      for (std::size_t gen : gens) {
        std::size_t c = g.conjugate(seeds[s], gen);
        if (!std::binary_search(members.begin(), members.end(), c)) {
          seeds.push_back(c);
          members = detail::closure(g, seeds);
          grew = true;
          break;
        }
      }
    }
  }
  SubgroupWitness w = detail::make_witness(g, members);
  w.is_normal = true;
  return w;
}

/// nu_p(|Z(G)|) == nu_p(|G|): the Sylow p-subgroup lies in the center.
inline bool sylow_is_central(const PermGroup& g, Prime p) {
  return nt::valuation(center(g).order(), p) == nt::valuation(g.order(), p);
}

struct PiElements {
  std::vector<Permutation> elements;
  bool is_subgroup = false;
};

/// Elements whose order involves only primes in `pi`; reports whether they
/// form a subgroup (which is then normal, the set being conjugation-stable).
inline PiElements pi_elements(const PermGroup& g, const PrimeSet& pi) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < g.order(); ++i) {
    bool ok = true;
    for (Prime p : nt::prime_divisors(g.element_order(i))) {
      if (pi.count(p) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) members.push_back(i);
  }
  PiElements out;
  out.is_subgroup = detail::is_closed(g, members);
  for (std::size_t i : members) out.elements.push_back(g.elements()[i]);
  return out;
}

/// Frobenius criterion without quotients: N normal, N and C meet trivially,
/// |N||C| = |G|, and each nontrivial c in C fixes no nontrivial element of N
/// under conjugation. Both N and C must be nontrivial.
inline bool frobenius_pair_check(const PermGroup& g, const SubgroupWitness& n, const SubgroupWitness& c) {
  auto n_idx = detail::indices_of(g, n.elements);
  auto c_idx = detail::indices_of(g, c.elements);
  if (!detail::is_closed(g, n_idx)) throw Error(ErrorKind::NotSubgroup, "N is not a subgroup");
  if (!detail::is_closed(g, c_idx)) throw Error(ErrorKind::NotSubgroup, "C is not a subgroup");
  if (!detail::is_normal_indices(g, n_idx)) throw Error(ErrorKind::NotNormal, "N is not normal");
  if (n_idx.size() < 2 || c_idx.size() < 2) return false;
  if (n_idx.size() * c_idx.size() != g.order()) return false;
  std::vector<std::size_t> common;
  std::set_intersection(n_idx.begin(), n_idx.end(), c_idx.begin(), c_idx.end(), std::back_inserter(common));
  if (common.size() != 1) return false;
  for (std::size_t ci : c_idx) {
    if (ci == g.identity_index()) continue;
    for (std::size_t ni : n_idx) {
      if (ni != g.identity_index() && g.conjugate(ni, ci) == ni) return false;
    }
  }
  return true;
}

/// Action on the disjoint union of the two point sets.
inline PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  const std::size_t da = a.degree();
  const std::size_t db = b.degree();
  std::vector<Permutation> gens;
  for (const auto& g : a.generators()) {
    std::vector<Point> img(da + db);
    for (std::size_t i = 0; i < da; ++i) img[i] = g(static_cast<Point>(i));
    for (std::size_t i = 0; i < db; ++i) img[da + i] = static_cast<Point>(da + i);
    gens.emplace_back(std::move(img));
  }
  for (const auto& g : b.generators()) {
    std::vector<Point> img(da + db);
    for (std::size_t i = 0; i < da; ++i) img[i] = static_cast<Point>(i);
    for (std::size_t i = 0; i < db; ++i) img[da + i] = static_cast<Point>(da + g(static_cast<Point>(i)));
    gens.emplace_back(std::move(img));
  }
  return PermGroup(da + db, std::move(gens));
}

inline bool is_abelian(const SubgroupWitness& w) {
  // Pairwise commutation over a greedy generating set would be cheaper, but
  // witnesses here are small enough for the direct check.
  for (std::size_t i = 0; i < w.elements.size(); ++i) {
    for (std::size_t j = i + 1; j < w.elements.size(); ++j) {
      if (!w.elements[i].commutes_with(w.elements[j])) return false;
    }
  }
  return true;
}

inline bool is_abelian(const PermGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!gens[i].commutes_with(gens[j])) return false;
    }
  }
  return true;
}

/// Subgroup of an enumerated group from an element set; throws NotSubgroup
/// when the set is not closed.
inline SubgroupWitness subgroup_of(const PermGroup& g, const std::vector<Permutation>& elements) {
  auto idx = detail::indices_of(g, elements);
  if (!detail::is_closed(g, idx)) throw Error(ErrorKind::NotSubgroup, "element set is not closed");
  return detail::make_witness(g, idx);
}

/// Subgroup generated by the given elements of an enumerated group.
inline SubgroupWitness generated_subgroup(const PermGroup& g, const std::vector<Permutation>& seeds) {
  return detail::make_witness(g, detail::closure(g, detail::indices_of(g, seeds)));
}

/// Re-wraps a subgroup as a standalone group acting on the points it moves,
/// relabelled 0..k-1 in ascending order. Restriction to the support is
/// faithful because every element fixes all points outside it.
inline PermGroup restrict_to_support(const PermGroup& g, const SubgroupWitness& sub) {
  std::vector<char> moved(g.degree(), 0);
  for (const auto& e : sub.elements) {
    for (std::size_t i = 0; i < e.degree(); ++i) {
      if (e(static_cast<Point>(i)) != i) moved[i] = 1;
    }
  }
  std::vector<Point> relabel(g.degree(), 0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < g.degree(); ++i) {
    if (moved[i] != 0) relabel[i] = static_cast<Point>(k++);
  }
  const std::size_t degree = std::max<std::size_t>(k, 1);
  std::vector<Permutation> gens;
  for (std::size_t gi : detail::generating_subset(g, detail::indices_of(g, sub.elements))) {
    const auto& e = g.elements()[gi];
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    for (std::size_t i = 0; i < g.degree(); ++i) {
      if (moved[i] != 0) img[relabel[i]] = relabel[e(static_cast<Point>(i))];
    }
    gens.emplace_back(std::move(img));
  }
  return PermGroup(degree, std::move(gens));
}

}  // namespace classgraph
