#pragma once

// Block-square detection. A partition (pi1, pi2, pi3, pi4) of the vertices
// is a block square when pi1/pi4 and pi2/pi3 have no edges between them and
// both pi1 and pi4 contain a vertex adjacent into pi2 and into pi3. The
// eight symmetries of the square permute the blocks; results are reported
// once per symmetry class.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "classgraph/error.hpp"
#include "classgraph/prime_graph.hpp"

namespace classgraph {

struct BlockPartition {
  std::array<PrimeSet, 4> blocks;

  const PrimeSet& pi1() const { return blocks[0]; }
  const PrimeSet& pi2() const { return blocks[1]; }
  const PrimeSet& pi3() const { return blocks[2]; }
  const PrimeSet& pi4() const { return blocks[3]; }

  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;
  friend auto operator<=>(const BlockPartition&, const BlockPartition&) = default;
};

struct BlockSquareOptions {
  /// Accept different witness vertices for the pi2 and pi3 adjacency.
  bool weak_witness = false;
  std::size_t max_vertices = 20;
};

/// Block index opposite to b: pi1 <-> pi4, pi2 <-> pi3.
constexpr std::size_t opposite_block(std::size_t b) { return 3 - b; }

/// The eight block relabellings preserving the two opposite pairs,
/// generated by pi1<->pi4, pi2<->pi3 and (pi1,pi4)<->(pi2,pi3).
inline const std::vector<std::array<std::size_t, 4>>& square_symmetries() {
  static const std::vector<std::array<std::size_t, 4>> syms = [] {
    std::vector<std::array<std::size_t, 4>> out;
    std::array<std::size_t, 4> p{0, 1, 2, 3};
    do {
      bool ok = true;
      for (std::size_t b = 0; b < 4; ++b) ok = ok && p[opposite_block(b)] == opposite_block(p[b]);
      if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return syms;
}

/// Block i of the result is block sym^-1(i) of the input, i.e. input block b
/// becomes output block sym[b].
inline BlockPartition apply_symmetry(const BlockPartition& part, const std::array<std::size_t, 4>& sym) {
  BlockPartition out;
  for (std::size_t b = 0; b < 4; ++b) out.blocks[sym[b]] = part.blocks[b];
  return out;
}

namespace detail {

inline void check_partition(const PrimeGraph& g, const BlockPartition& part) {
  PrimeSet covered;
  std::size_t total = 0;
  for (std::size_t b = 0; b < 4; ++b) {
    if (part.blocks[b].empty()) throw Error(ErrorKind::BadPartition, "block pi" + std::to_string(b + 1) + " is empty");
    total += part.blocks[b].size();
    covered.insert(part.blocks[b].begin(), part.blocks[b].end());
  }
  if (covered.size() != total) throw Error(ErrorKind::BadPartition, "blocks are not disjoint");
  if (covered != g.vertices()) throw Error(ErrorKind::BadPartition, "blocks do not cover the vertex set exactly");
}

inline bool has_neighbor_in(const PrimeGraph& g, Prime v, const PrimeSet& block) {
  return std::any_of(block.begin(), block.end(), [&](Prime w) { return g.adjacent(v, w); });
}

inline bool witness_ok(const PrimeGraph& g, const PrimeSet& side, const PrimeSet& b2, const PrimeSet& b3, bool weak) {
  if (weak) {
    bool to2 = std::any_of(side.begin(), side.end(), [&](Prime v) { return has_neighbor_in(g, v, b2); });
    bool to3 = std::any_of(side.begin(), side.end(), [&](Prime v) { return has_neighbor_in(g, v, b3); });
    return to2 && to3;
  }
  return std::any_of(side.begin(), side.end(),
                     [&](Prime v) { return has_neighbor_in(g, v, b2) && has_neighbor_in(g, v, b3); });
}

}  // namespace detail

inline bool is_block_square_partition(const PrimeGraph& g, const BlockPartition& part, bool weak_witness = false) {
  detail::check_partition(g, part);
  for (auto [p, q] : g.edges()) {
    for (std::size_t b = 0; b < 4; ++b) {
      if (part.blocks[b].count(p) != 0 && part.blocks[opposite_block(b)].count(q) != 0) return false;
    }
  }
  return detail::witness_ok(g, part.pi1(), part.pi2(), part.pi3(), weak_witness) &&
         detail::witness_ok(g, part.pi4(), part.pi2(), part.pi3(), weak_witness);
}

/// Block label of each vertex, vertices in ascending order.
inline std::vector<std::uint8_t> encode_partition(const PrimeGraph& g, const BlockPartition& part) {
  std::vector<std::uint8_t> out;
  for (Prime v : g.vertices()) {
    for (std::size_t b = 0; b < 4; ++b) {
      if (part.blocks[b].count(v) != 0) out.push_back(static_cast<std::uint8_t>(b));
    }
  }
  return out;
}

/// Lexicographically least encoding over the square symmetries. Names the
/// orbit; on graphs where the witness clause is not symmetric it need not be
/// a valid partition itself.
inline BlockPartition canonical_partition(const PrimeGraph& g, const BlockPartition& part) {
  BlockPartition best = part;
  auto best_code = encode_partition(g, part);
  for (const auto& sym : square_symmetries()) {
    auto candidate = apply_symmetry(part, sym);
    auto code = encode_partition(g, candidate);
    if (code < best_code) {
      best_code = std::move(code);
      best = std::move(candidate);
    }
  }
  return best;
}

namespace detail {

class BlockSearch {
 public:
  BlockSearch(const PrimeGraph& g, bool weak) : weak_(weak), vertices_(g.vertices().begin(), g.vertices().end()) {
    const std::size_t n = vertices_.size();
    adj_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) adj_[i * n + j] = g.adjacent(vertices_[i], vertices_[j]) ? 1 : 0;
    }
    labels_.assign(n, 0);
  }

  std::vector<BlockPartition> run() {
    // The witness clause only constrains pi1 and pi4, so the square
    // symmetries need not preserve validity; the first vertex is not fixed.
    if (vertices_.size() >= 4) assign(0);
    std::vector<BlockPartition> out;
    for (const auto& [key, code] : found_) {
      BlockPartition part;
      for (std::size_t i = 0; i < vertices_.size(); ++i) part.blocks[code[i]].insert(vertices_[i]);
      out.push_back(std::move(part));
    }
    return out;
  }

 private:
  void assign(std::size_t idx) {
    const std::size_t n = vertices_.size();
    std::size_t empty = 0;
    for (auto c : counts_) empty += c == 0 ? 1 : 0;
    if (empty > n - idx) return;
    if (idx == n) {
      emit();
      return;
    }
    for (std::uint8_t b = 0; b < 4; ++b) {
      const auto opp = static_cast<std::uint8_t>(opposite_block(b));
      bool clash = false;
      for (std::size_t j = 0; j < idx && !clash; ++j) clash = labels_[j] == opp && adj_[idx * n + j] != 0;
      if (clash) continue;
      labels_[idx] = b;
      ++counts_[b];
      assign(idx + 1);
      --counts_[b];
    }
  }

  bool side_ok(std::uint8_t side) const {
    const std::size_t n = vertices_.size();
    bool any2 = false, any3 = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (labels_[i] != side) continue;
      bool to2 = false, to3 = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (adj_[i * n + j] == 0) continue;
        to2 = to2 || labels_[j] == 1;
        to3 = to3 || labels_[j] == 2;
      }
      if (!weak_ && to2 && to3) return true;
      any2 = any2 || to2;
      any3 = any3 || to3;
    }
    return weak_ && any2 && any3;
  }

  void emit() {
    if (!side_ok(0) || !side_ok(3)) return;
    // orbit key = least relabelled code; keep the least valid code per orbit
    std::vector<std::uint8_t> key = labels_;
    std::vector<std::uint8_t> image(labels_.size());
    for (const auto& sym : square_symmetries()) {
      for (std::size_t i = 0; i < labels_.size(); ++i) image[i] = static_cast<std::uint8_t>(sym[labels_[i]]);
      if (image < key) key = image;
    }
    auto it = found_.find(key);
    if (it == found_.end()) {
      found_.emplace(std::move(key), labels_);
    } else if (labels_ < it->second) {
      it->second = labels_;
    }
  }

  bool weak_;
  std::vector<Prime> vertices_;
  std::vector<char> adj_;
  std::vector<std::uint8_t> labels_;
  std::array<std::size_t, 4> counts_{};
  std::map<std::vector<std::uint8_t>, std::vector<std::uint8_t>> found_;
};

}  // namespace detail

/// All block-square partitions, one per orbit of the square symmetries: the
/// valid member with the least encoding. Ascending by encoding. Empty iff the
/// graph is not a block square.
inline std::vector<BlockPartition> find_block_partitions(const PrimeGraph& g, const BlockSquareOptions& opts = {}) {
  if (g.vertices().size() > opts.max_vertices) {
    throw Error(ErrorKind::TooManyVertices, std::to_string(g.vertices().size()) + " vertices exceed the bound of " +
                                                std::to_string(opts.max_vertices));
  }
  auto out = detail::BlockSearch(g, opts.weak_witness).run();
  std::sort(out.begin(), out.end(), [&](const BlockPartition& a, const BlockPartition& b) {
    return encode_partition(g, a) < encode_partition(g, b);
  });
  return out;
}

/// Each block a clique and every prime of pi1 u pi4 adjacent to every prime
/// of pi2 u pi3: exactly the block squares realized by some group.
inline bool is_admissible_block_square(const PrimeGraph& g, const BlockPartition& part) {
  detail::check_partition(g, part);
  for (const auto& block : part.blocks) {
    if (!is_clique(g, block)) return false;
  }
  for (const auto* side : {&part.pi1(), &part.pi4()}) {
    for (Prime p : *side) {
      for (const auto* other : {&part.pi2(), &part.pi3()}) {
        for (Prime q : *other) {
          if (!g.adjacent(p, q)) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace classgraph
