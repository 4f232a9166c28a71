#pragma once

// Builds G = A x B with A, B Frobenius groups of coprime squarefree orders
// whose class-size graph is a prescribed admissible block square with block
// sizes (m1, m2, m3, m4).
//
// Prime policy: the complement primes of A are the m4 smallest unused odd
// primes, giving a cyclic complement of order n4. The m1 kernel primes of A
// are the smallest unused primes p = 1 (mod n4); that congruence is what
// makes a fixed-point-free multiplier action of Z_{n4} on each Z_p exist.
// B is built the same way from m3 complement primes and m2 kernel primes,
// avoiding every prime of A.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "classgraph/block_square.hpp"
#include "classgraph/dirichlet.hpp"
#include "classgraph/error.hpp"
#include "classgraph/group_expr.hpp"
#include "classgraph/number_theory.hpp"
#include "classgraph/prime_graph.hpp"
#include "classgraph/structure_analysis.hpp"

namespace classgraph {

struct ConstructOptions {
  PrimeSet avoid;
  std::uint64_t bound = kDefaultPrimeBound;
};

struct Construction {
  std::array<std::uint64_t, 4> block_sizes{};
  GroupExpr expr;
  PrimeGraph predicted;
  BlockPartition partition;
  std::uint64_t a_order = 0;
  std::uint64_t b_order = 0;
};

namespace detail {

inline std::vector<Prime> smallest_odd_unused(std::size_t count, const PrimeSet& used) {
  std::vector<Prime> out;
  Prime p = 3;
  while (out.size() < count) {
    p = nt::next_unused_prime(used, p);
    out.push_back(p);
    p += 2;
  }
  return out;
}

/// Dirichlet search, retried once with a doubled ceiling.
inline std::vector<Prime> kernel_primes(std::size_t count, std::uint64_t modulus, const PrimeSet& used,
                                        std::uint64_t bound) {
  PrimeRequest req{count, modulus, 1, used, std::max(bound, modulus + 1)};
  try {
    return find_primes_in_ap(req);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BoundExhausted) throw;
    req.bound *= 2;
    return find_primes_in_ap(req);
  }
}

inline std::uint64_t product(const std::vector<Prime>& ps) {
  std::uint64_t n = 1;
  for (auto p : ps) {
    if (__builtin_mul_overflow(n, p, &n)) throw Error(ErrorKind::InvalidArgument, "prime product overflows 64 bits");
  }
  return n;
}

}  // namespace detail

/// Graph the construction must produce: every block a clique, everything in
/// pi1 u pi4 joined to everything in pi2 u pi3, nothing else.
inline PrimeGraph predicted_block_square_graph(const BlockPartition& part) {
  PrimeGraph g;
  for (const auto& block : part.blocks) {
    for (Prime p : block) g.add_vertex(p);
  }
  for (const auto& block : part.blocks) {
    for (Prime p : block) {
      for (Prime q : block) g.add_edge(p, q);
    }
  }
  for (const auto* x : {&part.pi1(), &part.pi4()}) {
    for (const auto* y : {&part.pi2(), &part.pi3()}) {
      for (Prime p : *x) {
        for (Prime q : *y) g.add_edge(p, q);
      }
    }
  }
  return g;
}

inline Construction construct_block_square_group(std::uint64_t m1, std::uint64_t m2, std::uint64_t m3,
                                                 std::uint64_t m4, const ConstructOptions& opts = {}) {
  if (m1 == 0 || m2 == 0 || m3 == 0 || m4 == 0) {
    throw Error(ErrorKind::InvalidArgument, "all block sizes must be at least 1");
  }
  PrimeSet used = opts.avoid;
  auto take = [&used](const std::vector<Prime>& ps) { used.insert(ps.begin(), ps.end()); };

  const auto a_complement = detail::smallest_odd_unused(m4, used);
  take(a_complement);
  const std::uint64_t n4 = detail::product(a_complement);
  const auto a_kernel = detail::kernel_primes(m1, n4, used, opts.bound);
  take(a_kernel);

  const auto b_complement = detail::smallest_odd_unused(m3, used);
  take(b_complement);
  const std::uint64_t n3 = detail::product(b_complement);
  const auto b_kernel = detail::kernel_primes(m2, n3, used, opts.bound);
  take(b_kernel);

  Construction c;
  c.block_sizes = {m1, m2, m3, m4};
  c.expr = direct({frobenius(a_kernel, n4), frobenius(b_kernel, n3)});
  c.partition.blocks[0] = PrimeSet(a_kernel.begin(), a_kernel.end());
  c.partition.blocks[1] = PrimeSet(b_kernel.begin(), b_kernel.end());
  c.partition.blocks[2] = PrimeSet(b_complement.begin(), b_complement.end());
  c.partition.blocks[3] = PrimeSet(a_complement.begin(), a_complement.end());
  c.predicted = predicted_block_square_graph(c.partition);
  c.a_order = detail::product(a_kernel) * n4;
  c.b_order = detail::product(b_kernel) * n3;
  return c;
}

struct ConstructionCheck {
  PrimeGraph computed;
  std::vector<BlockPartition> detected;
  TheoremAReport theorem_a;
};

/// Recomputes the graph from the actual class sizes and demands an exact
/// match with the prediction, an admissible partition that the detector
/// finds, and a verified decomposition. Any failure is PredictionMismatch.
inline ConstructionCheck verify_construction(const Construction& c, const AnalysisOptions& opts = {}) {
  ConstructionCheck out;
  out.theorem_a = verify_theorem_A(c.expr, opts);
  out.computed = out.theorem_a.graph;
  out.detected = out.theorem_a.partitions;
  if (!(out.computed == c.predicted)) {
    throw Error(ErrorKind::PredictionMismatch, "computed prime graph differs from the predicted block square");
  }
  if (!is_block_square_partition(out.computed, c.partition) || !is_admissible_block_square(out.computed, c.partition)) {
    throw Error(ErrorKind::PredictionMismatch, "predicted partition is not an admissible block square");
  }
  const auto orbit = canonical_partition(out.computed, c.partition);
  if (std::none_of(out.detected.begin(), out.detected.end(),
                   [&](const BlockPartition& p) { return canonical_partition(out.computed, p) == orbit; })) {
    throw Error(ErrorKind::PredictionMismatch, "detector did not find the predicted partition");
  }
  if (out.theorem_a.status != TheoremAStatus::Verified) {
    throw Error(ErrorKind::PredictionMismatch, "decomposition check did not verify");
  }
  return out;
}

}  // namespace classgraph
