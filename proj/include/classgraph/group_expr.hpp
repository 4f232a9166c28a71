#pragma once

// Construction trees for the groups the tools build, and their evaluation
// into either a structured metabelian group or a permutation group.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "classgraph/error.hpp"
#include "classgraph/metabelian.hpp"
#include "classgraph/number_theory.hpp"
#include "classgraph/perm_group.hpp"

namespace classgraph {

struct GroupExpr;

struct CyclicNode {
  std::uint64_t n = 1;
  friend bool operator==(const CyclicNode&, const CyclicNode&) = default;
};

struct AbelianNode {
  std::vector<std::uint64_t> orders;
  friend bool operator==(const AbelianNode&, const AbelianNode&) = default;
};

/// Cyclic complement of order `complement` acting on Z_p for each kernel
/// prime p. Without explicit multipliers the smallest unit of order exactly
/// `complement` is used for each p.
struct FrobeniusNode {
  std::vector<std::uint64_t> kernel;
  std::uint64_t complement = 1;
  std::optional<std::vector<std::uint64_t>> multipliers;
  friend bool operator==(const FrobeniusNode&, const FrobeniusNode&) = default;
};

/// multipliers[i][j]: unit by which top generator i acts on kernel factor j.
struct SemidirectNode {
  std::vector<std::uint64_t> kernel;
  std::vector<std::uint64_t> top;
  std::vector<std::vector<std::uint64_t>> multipliers;
  friend bool operator==(const SemidirectNode&, const SemidirectNode&) = default;
};

struct DirectNode {
  std::vector<GroupExpr> factors;
  friend bool operator==(const DirectNode&, const DirectNode&);
};

struct PermNode {
  std::size_t degree = 1;
  std::vector<std::vector<Point>> generators;
  friend bool operator==(const PermNode&, const PermNode&) = default;
};

struct GroupExpr {
  std::variant<CyclicNode, AbelianNode, FrobeniusNode, SemidirectNode, DirectNode, PermNode> node;

  friend bool operator==(const GroupExpr&, const GroupExpr&) = default;
};

inline bool operator==(const DirectNode& a, const DirectNode& b) { return a.factors == b.factors; }

inline GroupExpr cyclic(std::uint64_t n) { return GroupExpr{CyclicNode{n}}; }
inline GroupExpr abelian(std::vector<std::uint64_t> orders) { return GroupExpr{AbelianNode{std::move(orders)}}; }
inline GroupExpr frobenius(std::vector<std::uint64_t> kernel, std::uint64_t complement,
                           std::optional<std::vector<std::uint64_t>> multipliers = std::nullopt) {
  return GroupExpr{FrobeniusNode{std::move(kernel), complement, std::move(multipliers)}};
}
inline GroupExpr direct(std::vector<GroupExpr> factors) { return GroupExpr{DirectNode{std::move(factors)}}; }
inline GroupExpr perm(std::size_t degree, std::vector<std::vector<Point>> generators) {
  return GroupExpr{PermNode{degree, std::move(generators)}};
}

using EvaluatedGroup = std::variant<MetabelianGroup, PermGroup>;

/// Smallest u in [1, p) whose multiplicative order modulo p is exactly n.
inline std::uint64_t auto_multiplier(Prime p, std::uint64_t n) {
  if ((p - 1) % n != 0) {
    throw Error(ErrorKind::InvalidMultiplier, "no unit of order " + std::to_string(n) + " modulo " +
                                                  std::to_string(p) + " (" + std::to_string(n) + " does not divide " +
                                                  std::to_string(p - 1) + ")");
  }
  const auto n_primes = nt::prime_divisors(n);
  for (std::uint64_t u = 1; u < p; ++u) {
    if (nt::pow_mod(u, n, p) != 1 % p) continue;
    bool exact = true;
    for (Prime q : n_primes) exact = exact && nt::pow_mod(u, n / q, p) != 1 % p;
    if (exact) return u;
  }
  throw Error(ErrorKind::InvalidMultiplier, "no unit of order " + std::to_string(n) + " modulo " + std::to_string(p));
}

namespace detail {

inline MetabelianGroup evaluate_frobenius(const FrobeniusNode& node) {
  if (node.complement == 0) throw Error(ErrorKind::InvalidExpression, "complement order must be positive");
  PrimeSet seen;
  std::uint64_t kernel_order = 1;
  for (auto p : node.kernel) {
    if (!nt::is_prime(p)) throw Error(ErrorKind::InvalidExpression, "kernel entry " + std::to_string(p) + " is not prime");
    if (!seen.insert(p).second) throw Error(ErrorKind::InvalidExpression, "kernel prime " + std::to_string(p) + " repeated");
    kernel_order *= p;
  }
  if (std::gcd(kernel_order, node.complement) != 1) {
    throw Error(ErrorKind::CoprimalityViolation, "complement order " + std::to_string(node.complement) +
                                                     " shares a prime with the kernel");
  }
  std::vector<std::uint64_t> units;
  if (node.multipliers) {
    if (node.multipliers->size() != node.kernel.size()) {
      throw Error(ErrorKind::InvalidMultiplier, "need one multiplier per kernel prime");
    }
    units = *node.multipliers;
  } else {
    for (auto p : node.kernel) units.push_back(auto_multiplier(p, node.complement));
  }
  if (node.complement == 1) {
    return MetabelianGroup(AbelianGroup{node.kernel}, AbelianGroup{}, MultiplierAction{});
  }
  return MetabelianGroup(AbelianGroup{node.kernel}, AbelianGroup{{node.complement}}, MultiplierAction{{units}});
}

inline std::vector<std::uint64_t> nontrivial(const std::vector<std::uint64_t>& orders) {
  std::vector<std::uint64_t> out;
  for (auto n : orders) {
    if (n == 0) throw Error(ErrorKind::InvalidExpression, "cyclic factor of order 0");
    if (n > 1) out.push_back(n);
  }
  return out;
}

/// Block-diagonal fold of metabelian factors. Abelian factors are split
/// into prime-power cyclic pieces placed on whichever side keeps |K| and |L|
/// coprime. Returns nullopt when coprimality cannot be kept.
inline std::optional<MetabelianGroup> fold_direct(const std::vector<MetabelianGroup>& children) {
  AbelianGroup kernel;
  AbelianGroup top;
  // Rows are keyed by (top factor) and filled once the kernel is final.
  struct TopRow {
    std::size_t child;  // SIZE_MAX for abelian pieces
    std::size_t row;
  };
  std::vector<TopRow> rows;
  std::vector<std::size_t> kernel_owner;  // child index, SIZE_MAX for abelian
  std::vector<std::size_t> kernel_col;
  constexpr auto kAbelian = static_cast<std::size_t>(-1);

  std::vector<std::uint64_t> abelian_pieces;
  for (std::size_t c = 0; c < children.size(); ++c) {
    const auto& g = children[c];
    if (g.kernel().rank() == 0 || g.has_trivial_action()) {
      for (auto n : g.kernel().factor_orders) {
        for (const auto& [p, e] : nt::factorize(n)) abelian_pieces.push_back(nt::p_part(n, p));
      }
      for (auto n : g.top().factor_orders) {
        for (const auto& [p, e] : nt::factorize(n)) abelian_pieces.push_back(nt::p_part(n, p));
      }
      continue;
    }
    for (std::size_t j = 0; j < g.kernel().rank(); ++j) {
      kernel.factor_orders.push_back(g.kernel().factor_orders[j]);
      kernel_owner.push_back(c);
      kernel_col.push_back(j);
    }
    for (std::size_t i = 0; i < g.top().rank(); ++i) {
      top.factor_orders.push_back(g.top().factor_orders[i]);
      rows.push_back({c, i});
    }
  }
  for (auto piece : abelian_pieces) {
    const Prime p = component_prime(piece);
    if (top.order() % p != 0 && kernel.order() % p == 0) {
      kernel.factor_orders.push_back(piece);
      kernel_owner.push_back(kAbelian);
      kernel_col.push_back(0);
    } else if (kernel.order() % p != 0) {
      top.factor_orders.push_back(piece);
      rows.push_back({kAbelian, 0});
    } else {
      return std::nullopt;
    }
  }
  if (std::gcd(kernel.order(), top.order()) != 1) return std::nullopt;

  MultiplierAction action;
  for (const auto& r : rows) {
    std::vector<std::uint64_t> row(kernel.rank(), 1);
    if (r.child != kAbelian) {
      for (std::size_t j = 0; j < kernel.rank(); ++j) {
        if (kernel_owner[j] == r.child) row[j] = children[r.child].multiplier(r.row, kernel_col[j]);
      }
    }
    action.multipliers.push_back(std::move(row));
  }
  MetabelianGroup folded(std::move(kernel), std::move(top), std::move(action));
  std::vector<MetabelianGroup> provenance;
  for (const auto& c : children) {
    if (c.factors().empty()) {
      provenance.push_back(c);
    } else {
      provenance.insert(provenance.end(), c.factors().begin(), c.factors().end());
    }
  }
  folded.set_factors(std::move(provenance));
  return folded;
}

}  // namespace detail

inline EvaluatedGroup evaluate(const GroupExpr& expr, std::size_t perm_cap = kDefaultEnumerationCap);

namespace detail {

struct EvaluateVisitor {
  std::size_t perm_cap;

  EvaluatedGroup operator()(const CyclicNode& node) const {
    return MetabelianGroup::abelian(nontrivial({node.n}));
  }
  EvaluatedGroup operator()(const AbelianNode& node) const { return MetabelianGroup::abelian(nontrivial(node.orders)); }
  EvaluatedGroup operator()(const FrobeniusNode& node) const { return evaluate_frobenius(node); }
  EvaluatedGroup operator()(const SemidirectNode& node) const {
    if (node.multipliers.size() != node.top.size()) {
      throw Error(ErrorKind::InvalidMultiplier, "need one multiplier row per top factor");
    }
    for (auto n : node.kernel) {
      if (n < 2) throw Error(ErrorKind::InvalidExpression, "kernel factor orders must be at least 2");
    }
    for (auto n : node.top) {
      if (n < 2) throw Error(ErrorKind::InvalidExpression, "top factor orders must be at least 2");
    }
    return MetabelianGroup(AbelianGroup{node.kernel}, AbelianGroup{node.top}, MultiplierAction{node.multipliers});
  }
  EvaluatedGroup operator()(const DirectNode& node) const {
    if (node.factors.empty()) return MetabelianGroup::abelian({});
    std::vector<EvaluatedGroup> children;
    for (const auto& f : node.factors) children.push_back(evaluate(f, perm_cap));
    bool all_structured = true;
    for (const auto& c : children) all_structured = all_structured && std::holds_alternative<MetabelianGroup>(c);
    if (all_structured) {
      std::vector<MetabelianGroup> metas;
      for (auto& c : children) metas.push_back(std::get<MetabelianGroup>(c));
      if (auto folded = fold_direct(metas)) return *folded;
    }
    // Mixed primes or permutation children: fall back to permutations.
    std::optional<PermGroup> product;
    for (const auto& c : children) {
      PermGroup pg = std::holds_alternative<PermGroup>(c) ? std::get<PermGroup>(c)
                                                          : to_permutation(std::get<MetabelianGroup>(c), perm_cap);
      product = product ? direct_product(*product, pg) : pg;
    }
    return *product;
  }
  EvaluatedGroup operator()(const PermNode& node) const {
    if (node.degree == 0) throw Error(ErrorKind::InvalidExpression, "perm degree must be positive");
    std::vector<Permutation> gens;
    for (const auto& images : node.generators) {
      if (images.size() != node.degree) {
        throw Error(ErrorKind::InvalidExpression, "generator has " + std::to_string(images.size()) +
                                                      " images, expected " + std::to_string(node.degree));
      }
      try {
        gens.emplace_back(images);
      } catch (const Error& e) {
        throw Error(ErrorKind::InvalidExpression, e.what());
      }
    }
    return PermGroup(node.degree, std::move(gens));
  }
};

}  // namespace detail

/// Deterministic: identical expressions give identical groups.
inline EvaluatedGroup evaluate(const GroupExpr& expr, std::size_t perm_cap) {
  return std::visit(detail::EvaluateVisitor{perm_cap}, expr.node);
}

/// Permutation view of an evaluated group, enumerated.
inline PermGroup as_permutation_group(const EvaluatedGroup& g, std::size_t cap = kDefaultEnumerationCap) {
  if (const auto* m = std::get_if<MetabelianGroup>(&g)) return to_permutation(*m, cap);
  PermGroup p = std::get<PermGroup>(g);
  p.enumerate(cap);
  return p;
}

}  // namespace classgraph
