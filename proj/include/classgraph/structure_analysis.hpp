#pragma once

// D-group recognition and the instance-level check that a block-square
// prime graph comes from a direct product of two D-groups of coprime orders.
//
// A D-group is G = AB with A normal abelian, B abelian, gcd(|A|, |B|) = 1,
// Z(G) <= B and G/Z(G) Frobenius with kernel AZ(G)/Z(G). Two recognizers are
// provided: one on permutation groups (explicit subgroups, no quotients:
// the Frobenius condition becomes C_B(a) <= Z(G) for every a != 1 in A) and
// one reading the action data of a coprime metabelian group.

#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "classgraph/block_square.hpp"
#include "classgraph/error.hpp"
#include "classgraph/group_expr.hpp"
#include "classgraph/metabelian.hpp"
#include "classgraph/number_theory.hpp"
#include "classgraph/perm_group.hpp"
#include "classgraph/prime_graph.hpp"
#include "classgraph/spectrum.hpp"

namespace classgraph {

struct AnalysisOptions {
  std::size_t perm_cap = kDefaultEnumerationCap;
  std::uint64_t spectrum_cap = kDefaultSpectrumCap;
  BlockSquareOptions block;
};

struct DGroupWitness {
  std::uint64_t a_order = 0;
  std::uint64_t b_order = 0;
  std::uint64_t center_order = 0;
  PrimeSet a_primes;         // pi(A)
  PrimeSet quotient_primes;  // pi(B / Z(G))
  std::set<std::uint64_t> class_size_set;
  // Populated by the permutation route only.
  std::optional<SubgroupWitness> a;
  std::optional<SubgroupWitness> b;
};

inline bool is_dgroup_spectral(const Spectrum& spectrum) { return components(delta_of(spectrum)).size() >= 2; }

namespace detail {

inline DGroupWitness finish_witness(std::uint64_t a, std::uint64_t b, std::uint64_t z) {
  DGroupWitness w;
  w.a_order = a;
  w.b_order = b;
  w.center_order = z;
  w.a_primes = nt::prime_divisors(a);
  w.quotient_primes = nt::prime_divisors(b / z);
  w.class_size_set = {1, a, b / z};
  return w;
}

}  // namespace detail

/// Permutation route. A is the derived subgroup; B is grown greedily from
/// Z(G) by adjoining, in element order, commuting elements of order prime
/// to |A| until it reaches order |G : A|. In a D-group every abelian
/// subgroup of order prime to |A| lies in a complement, so the greedy
/// search cannot get stuck.
inline std::optional<DGroupWitness> dgroup_witness(const PermGroup& g) {
  const auto a = derived_subgroup(g);
  if (a.order() <= 1 || !is_abelian(a)) return std::nullopt;
  const std::uint64_t complement_order = g.order() / a.order();
  if (std::gcd(a.order(), complement_order) != 1) return std::nullopt;
  const auto z = center(g);
  if (std::gcd(z.order(), a.order()) != 1) return std::nullopt;

  auto b_idx = detail::indices_of(g, z.elements);
  auto b_gens = detail::generating_subset(g, b_idx);
  for (std::size_t x = 0; x < g.order() && b_idx.size() < complement_order; ++x) {
    if (std::gcd(g.element_order(x), a.order()) != 1) continue;
    if (std::binary_search(b_idx.begin(), b_idx.end(), x)) continue;
    const auto& ex = g.elements()[x];
    bool commutes = std::all_of(b_gens.begin(), b_gens.end(),
                                [&](std::size_t s) { return ex.commutes_with(g.elements()[s]); });
    if (!commutes) continue;
    b_gens.push_back(x);
    b_idx = detail::closure(g, b_gens);
  }
  if (b_idx.size() != complement_order) return std::nullopt;

  const auto b = detail::make_witness(g, b_idx);
  for (const auto& elem : a.elements) {
    if (elem.is_identity()) continue;
    for (const auto& y : b.elements) {
      if (y.commutes_with(elem) && !z.contains(y)) return std::nullopt;
    }
  }
  auto w = detail::finish_witness(a.order(), b.order(), z.order());
  w.a = a;
  w.b = b;
  return w;
}

/// Structured route for coprime metabelian groups. On each prime-power
/// component of K an element of L acts either trivially or fixed-point
/// freely, so A = [K, L] is the sum of the components something moves, the
/// rest of K is central, and G is a D-group iff every element of L moves
/// either none or all of A's components.
inline std::optional<DGroupWitness> dgroup_witness(const MetabelianGroup& g) {
  if (!g.is_coprime()) {
    throw Error(ErrorKind::InvalidArgument, "structured D-group recognition needs gcd(|K|, |L|) = 1");
  }
  const auto p = primary_form(g);
  std::vector<std::size_t> moved_comps;
  std::uint64_t a_order = 1;
  std::uint64_t fixed_order = 1;
  for (std::size_t j = 0; j < p.kernel().rank(); ++j) {
    bool moved = false;
    for (std::size_t i = 0; i < p.top().rank(); ++i) moved = moved || p.multiplier(i, j) != 1;
    if (moved) {
      moved_comps.push_back(j);
      a_order *= p.kernel().factor_orders[j];
    } else {
      fixed_order *= p.kernel().factor_orders[j];
    }
  }
  if (moved_comps.empty() || std::gcd(a_order, fixed_order) != 1) return std::nullopt;
  bool ok = true;
  std::uint64_t kernel_of_action = 0;
  for_each_top_element(p, [&](const std::vector<std::uint64_t>&, const std::vector<std::uint64_t>& mult) {
    std::size_t count = 0;
    for (auto j : moved_comps) count += mult[j] != 1 ? 1 : 0;
    if (count == 0) ++kernel_of_action;
    else if (count != moved_comps.size()) ok = false;
  });
  if (!ok) return std::nullopt;
  return detail::finish_witness(a_order, p.top().order() * fixed_order, fixed_order * kernel_of_action);
}

struct CentralStrip {
  PrimeSet central_primes;
  SubgroupWitness core;
};

/// Splits off the central Sylow subgroups: G = core x (central Hall part).
inline CentralStrip strip_central_sylows(const PermGroup& g) {
  CentralStrip out;
  PrimeSet rest;
  for (Prime p : nt::prime_divisors(g.order())) {
    (sylow_is_central(g, p) ? out.central_primes : rest).insert(p);
  }
  auto pe = pi_elements(g, rest);
  if (!pe.is_subgroup) {
    throw Error(ErrorKind::DecompositionFailure, "elements of non-central prime order do not form a subgroup");
  }
  out.core = subgroup_of(g, pe.elements);
  if (out.core.order() * nt::pi_part(g.order(), out.central_primes) != g.order()) {
    throw Error(ErrorKind::DecompositionFailure, "core and central Hall part do not multiply to |G|");
  }
  return out;
}

struct StructuredCentralStrip {
  PrimeSet central_primes;
  MetabelianGroup core;
};

inline StructuredCentralStrip strip_central_sylows(const MetabelianGroup& g) {
  PrimeSet central;
  PrimeSet rest;
  for (Prime p : nt::prime_divisors(g.order())) (sylow_is_central(g, p) ? central : rest).insert(p);
  if (!hall_part_is_normal(g, rest)) {
    throw Error(ErrorKind::DecompositionFailure, "non-central Hall part is not normal");
  }
  auto core = hall_part(g, rest);
  if (core.order() * nt::pi_part(g.order(), central) != g.order()) {
    throw Error(ErrorKind::DecompositionFailure, "core and central Hall part do not multiply to |G|");
  }
  return {std::move(central), std::move(core)};
}

enum class TheoremAStatus { NotBlockSquare, Verified, CounterexampleCandidate };

inline std::string_view to_string(TheoremAStatus s) {
  switch (s) {
    case TheoremAStatus::NotBlockSquare: return "NOT_BLOCK_SQUARE";
    case TheoremAStatus::Verified: return "VERIFIED";
    case TheoremAStatus::CounterexampleCandidate: return "COUNTEREXAMPLE_CANDIDATE";
  }
  return "UNKNOWN";
}

struct TheoremAWitness {
  PrimeSet central_primes;
  std::uint64_t a_order = 0;
  std::uint64_t b_order = 0;
  DGroupWitness a_dgroup;
  DGroupWitness b_dgroup;
  BlockPartition partition;
};

struct TheoremAReport {
  std::string route;  // "permutation" or "structured"
  std::uint64_t order = 0;
  Spectrum spectrum;
  PrimeGraph graph;
  std::vector<BlockPartition> partitions;
  TheoremAStatus status = TheoremAStatus::NotBlockSquare;
  std::optional<TheoremAWitness> witness;
  /// Set when the input was declared as a direct product of two D-groups of
  /// coprime orders: whether the graph is then a block square.
  std::optional<bool> forward_check;
  std::vector<std::string> notes;
};

namespace detail {

/// The D-group pieces must have their kernel and quotient primes on the
/// two opposite blocks of the square.
inline bool blocks_match(const DGroupWitness& w, const PrimeSet& x, const PrimeSet& y) {
  return (w.a_primes == x && w.quotient_primes == y) || (w.a_primes == y && w.quotient_primes == x);
}

inline PrimeSet set_union(const PrimeSet& a, const PrimeSet& b) {
  PrimeSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline void fail(TheoremAReport& r, std::string note) {
  r.status = TheoremAStatus::CounterexampleCandidate;
  r.notes.push_back(std::move(note));
}

}  // namespace detail

/// Permutation route. Both parts are rebuilt as standalone groups on the
/// points they move before running the D-group recognizer on them.
inline TheoremAReport verify_theorem_A(PermGroup& g, const AnalysisOptions& opts = {}) {
  TheoremAReport r;
  r.route = "permutation";
  g.enumerate(opts.perm_cap);
  r.order = g.order();
  r.spectrum = conjugacy_class_sizes(g);
  r.graph = delta_of(r.spectrum);
  r.partitions = find_block_partitions(r.graph, opts.block);
  if (r.partitions.empty()) return r;

  const auto strip = strip_central_sylows(g);
  r.status = TheoremAStatus::Verified;
  for (const auto& part : r.partitions) {
    const auto sigma_a = detail::set_union(part.pi1(), part.pi4());
    const auto sigma_b = detail::set_union(part.pi2(), part.pi3());
    auto a_pe = pi_elements(g, sigma_a);
    auto b_pe = pi_elements(g, sigma_b);
    if (!a_pe.is_subgroup || !b_pe.is_subgroup) {
      detail::fail(r, "Hall parts for pi1+pi4 / pi2+pi3 are not subgroups");
      return r;
    }
    if (a_pe.elements.size() * b_pe.elements.size() != strip.core.order()) {
      detail::fail(r, "Hall parts do not multiply to the core order (abelian direct factor sharing primes?)");
      return r;
    }
    auto a_group = restrict_to_support(g, subgroup_of(g, a_pe.elements));
    auto b_group = restrict_to_support(g, subgroup_of(g, b_pe.elements));
    a_group.enumerate(opts.perm_cap);
    b_group.enumerate(opts.perm_cap);
    auto wa = dgroup_witness(a_group);
    auto wb = dgroup_witness(b_group);
    if (!wa || !wb) {
      detail::fail(r, "a Hall part is not a D-group");
      return r;
    }
    if (!detail::blocks_match(*wa, part.pi1(), part.pi4()) || !detail::blocks_match(*wb, part.pi2(), part.pi3())) {
      detail::fail(r, "D-group prime sets do not match the block partition");
      return r;
    }
    if (!r.witness) {
      r.witness = TheoremAWitness{strip.central_primes, a_group.order(), b_group.order(), *wa, *wb, part};
    }
  }
  return r;
}

/// Structured route; non-coprime groups are handed to the permutation route.
inline TheoremAReport verify_theorem_A(const MetabelianGroup& g, const AnalysisOptions& opts = {}) {
  if (!g.is_coprime()) {
    auto pg = to_permutation(g, opts.perm_cap);
    return verify_theorem_A(pg, opts);
  }
  TheoremAReport r;
  r.route = "structured";
  r.order = g.order();
  r.spectrum = class_size_spectrum(g, opts.spectrum_cap);
  r.graph = delta_of(r.spectrum);
  r.partitions = find_block_partitions(r.graph, opts.block);
  if (r.partitions.empty()) return r;

  const auto strip = strip_central_sylows(g);
  r.status = TheoremAStatus::Verified;
  for (const auto& part : r.partitions) {
    const auto sigma_a = detail::set_union(part.pi1(), part.pi4());
    const auto sigma_b = detail::set_union(part.pi2(), part.pi3());
    if (!hall_part_is_normal(g, sigma_a) || !hall_part_is_normal(g, sigma_b)) {
      detail::fail(r, "Hall parts for pi1+pi4 / pi2+pi3 are not normal");
      return r;
    }
    auto a_part = hall_part(g, sigma_a);
    auto b_part = hall_part(g, sigma_b);
    if (a_part.order() * b_part.order() != strip.core.order()) {
      detail::fail(r, "Hall parts do not multiply to the core order (abelian direct factor sharing primes?)");
      return r;
    }
    auto wa = dgroup_witness(a_part);
    auto wb = dgroup_witness(b_part);
    if (!wa || !wb) {
      detail::fail(r, "a Hall part is not a D-group");
      return r;
    }
    if (!detail::blocks_match(*wa, part.pi1(), part.pi4()) || !detail::blocks_match(*wb, part.pi2(), part.pi3())) {
      detail::fail(r, "D-group prime sets do not match the block partition");
      return r;
    }
    if (!r.witness) r.witness = TheoremAWitness{strip.central_primes, a_part.order(), b_part.order(), *wa, *wb, part};
  }
  return r;
}

/// Structural D-group test on an evaluated group, by whichever route fits.
inline std::optional<DGroupWitness> dgroup_witness(const EvaluatedGroup& g, const AnalysisOptions& opts = {}) {
  if (const auto* m = std::get_if<MetabelianGroup>(&g); m != nullptr && m->is_coprime()) return dgroup_witness(*m);
  return dgroup_witness(as_permutation_group(g, opts.perm_cap));
}

inline std::uint64_t group_order(const EvaluatedGroup& g, std::size_t perm_cap = kDefaultEnumerationCap) {
  if (const auto* m = std::get_if<MetabelianGroup>(&g)) return m->order();
  return as_permutation_group(g, perm_cap).order();
}

inline bool is_abelian(const EvaluatedGroup& g) {
  if (const auto* m = std::get_if<MetabelianGroup>(&g)) return m->kernel().rank() == 0 || m->has_trivial_action();
  return is_abelian(std::get<PermGroup>(g));
}

/// Evaluates and verifies. When the expression is a direct product with
/// exactly two non-abelian factors that are D-groups of coprime orders, also
/// checks the converse direction: the graph must be a block square.
inline TheoremAReport verify_theorem_A(const GroupExpr& expr, const AnalysisOptions& opts = {}) {
  auto evaluated = evaluate(expr, opts.perm_cap);
  TheoremAReport r;
  if (auto* m = std::get_if<MetabelianGroup>(&evaluated)) {
    r = verify_theorem_A(*m, opts);
  } else {
    r = verify_theorem_A(std::get<PermGroup>(evaluated), opts);
  }
  if (const auto* d = std::get_if<DirectNode>(&expr.node)) {
    std::vector<EvaluatedGroup> nonabelian;
    for (const auto& f : d->factors) {
      auto fg = evaluate(f, opts.perm_cap);
      if (!is_abelian(fg)) nonabelian.push_back(std::move(fg));
    }
    if (nonabelian.size() == 2) {
      auto w0 = dgroup_witness(nonabelian[0], opts);
      auto w1 = dgroup_witness(nonabelian[1], opts);
      const bool coprime =
          std::gcd(group_order(nonabelian[0], opts.perm_cap), group_order(nonabelian[1], opts.perm_cap)) == 1;
      if (w0 && w1 && coprime) {
        r.forward_check = !r.partitions.empty();
        if (!*r.forward_check) detail::fail(r, "direct product of coprime D-groups without a block-square graph");
      }
    }
  }
  return r;
}

}  // namespace classgraph
