#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "classgraph/error.hpp"
#include "classgraph/number_theory.hpp"
#include "classgraph/spectrum.hpp"

namespace classgraph {

/// Prime graph on class sizes: vertices are primes dividing some class size,
/// p and q adjacent iff pq divides some class size.
class PrimeGraph {
 public:
  using Edge = std::pair<Prime, Prime>;

  PrimeGraph() = default;
  PrimeGraph(PrimeSet vertices, std::set<Edge> edges) : vertices_(std::move(vertices)) {
    for (auto [p, q] : edges) add_edge(p, q);
  }

  void add_vertex(Prime p) { vertices_.insert(p); }

  /// Stores {p, q} with p < q; loops are ignored.
  void add_edge(Prime p, Prime q) {
    if (p == q) return;
    if (p > q) std::swap(p, q);
    if (vertices_.count(p) == 0 || vertices_.count(q) == 0) {
      throw Error(ErrorKind::VertexNotInGraph, "edge endpoint is not a vertex");
    }
    edges_.emplace(p, q);
  }

  const PrimeSet& vertices() const { return vertices_; }
  const std::set<Edge>& edges() const { return edges_; }
  bool has_vertex(Prime p) const { return vertices_.count(p) != 0; }

  bool adjacent(Prime p, Prime q) const {
    if (p > q) std::swap(p, q);
    return edges_.count({p, q}) != 0;
  }

  PrimeSet neighbors(Prime p) const {
    PrimeSet out;
    for (auto [a, b] : edges_) {
      if (a == p) out.insert(b);
      if (b == p) out.insert(a);
    }
    return out;
  }

  friend bool operator==(const PrimeGraph&, const PrimeGraph&) = default;

 private:
  PrimeSet vertices_;
  std::set<Edge> edges_;
};

/// Builds the graph from a class-size multiset. Throws on an empty
/// spectrum; the spectrum {1} gives the empty graph.
inline PrimeGraph delta_of(const Spectrum& spectrum) {
  if (spectrum.empty()) throw Error(ErrorKind::InvalidArgument, "empty class-size spectrum");
  PrimeGraph g;
  std::vector<PrimeSet> per_size;
  for (const auto& [size, count] : spectrum) {
    if (size == 0) throw Error(ErrorKind::InvalidArgument, "class size 0");
    per_size.push_back(nt::prime_divisors(size));
    for (Prime p : per_size.back()) g.add_vertex(p);
  }
  for (const auto& primes : per_size) {
    for (auto it = primes.begin(); it != primes.end(); ++it) {
      for (auto jt = std::next(it); jt != primes.end(); ++jt) g.add_edge(*it, *jt);
    }
  }
  return g;
}

inline PrimeGraph delta_of(const std::vector<std::uint64_t>& sizes) { return delta_of(spectrum_from_list(sizes)); }

/// True when the spectrum contains the identity class; a real group's always does.
inline bool has_identity_class(const Spectrum& s) { return s.count(1) != 0; }

inline std::vector<PrimeSet> components(const PrimeGraph& g) {
  std::vector<PrimeSet> out;
  PrimeSet seen;
  for (Prime start : g.vertices()) {
    if (seen.count(start) != 0) continue;
    PrimeSet comp{start};
    std::vector<Prime> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      Prime v = stack.back();
      stack.pop_back();
      for (Prime w : g.neighbors(v)) {
        if (seen.insert(w).second) {
          comp.insert(w);
          stack.push_back(w);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_clique(const PrimeGraph& g, const PrimeSet& s) {
  for (Prime p : s) {
    if (!g.has_vertex(p)) throw Error(ErrorKind::VertexNotInGraph, std::to_string(p) + " is not a vertex");
  }
  for (auto it = s.begin(); it != s.end(); ++it) {
    for (auto jt = std::next(it); jt != s.end(); ++jt) {
      if (!g.adjacent(*it, *jt)) return false;
    }
  }
  return true;
}

/// Vertices adjacent to every other vertex.
inline PrimeSet complete_vertices(const PrimeGraph& g) {
  PrimeSet out;
  for (Prime p : g.vertices()) {
    if (g.neighbors(p).size() + 1 == g.vertices().size()) out.insert(p);
  }
  return out;
}

/// Vertices other than p that are not adjacent to p.
inline PrimeSet non_neighbors(const PrimeGraph& g, Prime p) {
  PrimeSet out;
  for (Prime q : g.vertices()) {
    if (q != p && !g.adjacent(p, q)) out.insert(q);
  }
  return out;
}

/// Deterministic DOT text: vertices ascending, then edges in lexicographic order.
inline std::string export_dot(const PrimeGraph& g) {
  std::ostringstream out;
  out << "graph delta {\n";
  for (Prime p : g.vertices()) out << "  " << p << ";\n";
  for (auto [p, q] : g.edges()) out << "  " << p << " -- " << q << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace classgraph
