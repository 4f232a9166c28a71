// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>

#include "classgraph.hpp"
#include "oracles.hpp"

using namespace classgraph;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) detail = what;
    ok = false;
  }
};

int failures = 0;

void run(const std::string& id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) out.require(false, "took longer than the time limit");
  if (!out.ok) ++failures;
  std::printf("%s %-3s %-64s %7.2fs%s%s\n", out.ok ? "PASS" : "FAIL", id.c_str(), title.c_str(), secs,
              out.detail.empty() ? "" : "  ", out.detail.c_str());
  std::fflush(stdout);
}

struct CorpusEntry {
  std::string file;
  GroupSpecFile spec;
};

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& e : fs::directory_iterator(CORPUS_DIR)) {
    const auto name = e.path().filename().string();
    if (e.path().extension() != ".json" || name.ends_with(".prediction.json")) continue;
    out.push_back({name, load_spec(e.path())});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.file < b.file; });
  return out;
}

std::vector<oracle::Perm> generators_of(const PermGroup& g) {
  std::vector<oracle::Perm> gens;
  for (const auto& p : g.generators()) gens.emplace_back(p.images().begin(), p.images().end());
  return gens;
}

PermGroup perm_form(const EvaluatedGroup& g) {
  if (const auto* m = std::get_if<MetabelianGroup>(&g)) {
    auto p = to_permutation(*m);
    p.enumerate();
    return p;
  }
  return as_permutation_group(g);
}

std::set<BlockPartition> oracle_orbits(const PrimeGraph& g) {
  std::map<BlockPartition, BlockPartition> best;
  for (const auto& lab : oracle::block_labellings(g, false)) {
    const auto p = oracle::from_labels(g, lab);
    BlockPartition key = p;
    for (const auto& s : square_symmetries()) key = std::min(key, apply_symmetry(p, s));
    auto it = best.find(key);
    if (it == best.end() || encode_partition(g, p) < encode_partition(g, it->second)) best[key] = p;
  }
  std::set<BlockPartition> out;
  for (const auto& [k, p] : best) out.insert(p);
  return out;
}

}  // namespace

int main() {
  const auto groups = corpus();
  const GroupExpr f21xf55 = direct({frobenius({7}, 3), frobenius({11}, 5)});

  run("1", "D-group spectrum law on Frobenius([7],3)", 1.0, [] {
    Outcome o;
    auto g = std::get<MetabelianGroup>(evaluate(frobenius({7}, 3)));
    const auto s = class_size_spectrum(g);
    o.require(s == spectrum_from_list(std::vector<std::uint64_t>{1, 3, 3, 7, 7}), "multiset differs");
    o.require(s == oracle::meta_spectrum(g), "oracle multiset differs");
    auto w = dgroup_witness(g);
    o.require(w.has_value(), "no D-group witness");
    if (w) {
      o.require(w->a_order == 7 && w->b_order == 3 && w->center_order == 1, "wrong |A|, |B| or |Z|");
      o.require(size_set(s) == std::set<std::uint64_t>({1, w->a_order, w->b_order / w->center_order}),
                "size set is not {1,|A|,|B/Z|}");
    }
    return o;
  });

  run("2", "disconnected iff D-group, whole corpus", 30.0, [&] {
    Outcome o;
    o.require(groups.size() >= 12, "corpus too small");
    for (const auto& [file, spec] : groups) {
      const auto r = verify_theorem_A(spec.construct);
      const bool disconnected = components(r.graph).size() >= 2;
      const bool structural = dgroup_witness(evaluate(spec.construct)).has_value();
      o.require(disconnected == structural, file + ": recognizers disagree");
      o.require(is_dgroup_spectral(r.spectrum) == disconnected, file + ": spectral test inconsistent");
    }
    return o;
  });

  run("3", "forward: F21 x F55 gives the 4-cycle on {3,5,7,11}", 5.0, [&] {
    Outcome o;
    const auto r = verify_theorem_A(f21xf55);
    o.require(r.order == 1155, "order");
    o.require(r.graph.vertices() == PrimeSet({3, 5, 7, 11}), "vertex set");
    const std::set<PrimeGraph::Edge> expected{{3, 5}, {3, 11}, {5, 7}, {7, 11}};
    o.require(r.graph.edges() == expected, "edge set");
    o.require(r.partitions.size() == 1, "expected exactly one partition class");
    return o;
  });

  run("4", "backward: VERIFIED with |A|=21, |B|=55; S4 and Z6 not squares", 0, [&] {
    Outcome o;
    const auto r = verify_theorem_A(f21xf55);
    o.require(r.status == TheoremAStatus::Verified, "F21 x F55 not verified");
    o.require(r.witness && r.witness->a_order == 21 && r.witness->b_order == 55, "wrong |A|, |B|");
    auto s4 = as_permutation_group(evaluate(perm(4, {{1, 0, 2, 3}, {1, 2, 3, 0}})));
    o.require(verify_theorem_A(s4).status == TheoremAStatus::NotBlockSquare, "S4");
    o.require(verify_theorem_A(cyclic(6)).status == TheoremAStatus::NotBlockSquare, "Z6");
    return o;
  });

  run("5", "construct/analyze all (m1..m4) with sum <= 8", 120.0, [] {
    Outcome o;
    std::size_t tuples = 0;
    for (std::uint64_t a = 1; a <= 5; ++a) {
      for (std::uint64_t b = 1; a + b <= 6; ++b) {
        for (std::uint64_t c = 1; a + b + c <= 7; ++c) {
          for (std::uint64_t d = 1; a + b + c + d <= 8; ++d) {
            ++tuples;
            const auto con = construct_block_square_group(a, b, c, d);
            const auto spectrum = class_size_spectrum(std::get<MetabelianGroup>(evaluate(con.expr)));
            const auto computed = delta_of(spectrum);
            const std::string tag = std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d);
            o.require(computed == con.predicted, tag + ": graph differs");
            o.require(is_block_square_partition(computed, con.partition), tag + ": not a block square");
            o.require(is_admissible_block_square(computed, con.partition), tag + ": not admissible");
            verify_construction(con);
          }
        }
      }
    }
    o.require(tuples == 70, "expected 70 tuples, got " + std::to_string(tuples));
    return o;
  });

  run("6", "spectrum vs permutation oracle, corpus groups of order <= 5000", 0, [&] {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& [file, spec] : groups) {
      const auto r = verify_theorem_A(spec.construct);
      if (r.order > 5000) continue;
      const auto p = perm_form(evaluate(spec.construct));
      const auto expected = oracle::perm_spectrum(p.degree(), generators_of(p));
      o.require(r.spectrum == expected, file + ": spectrum differs from oracle");
      ++checked;
    }
    o.require(checked >= 20, "too few groups checked");
    return o;
  });

  run("7", "detector vs naive oracle, <= 6 vertices + 1000 random on 7", 60.0, [] {
    Outcome o;
    const std::vector<Prime> primes{2, 3, 5, 7, 11, 13, 17};
    for (std::size_t n = 0; n <= 6; ++n) {
      std::vector<Prime> v(primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(n));
      const std::uint64_t total = 1ULL << (n * (n - 1) / 2);
      for (std::uint64_t code = 0; code < total; ++code) {
        const auto g = oracle::graph_from_code(v, code);
        const auto found = find_block_partitions(g);
        o.require(std::set<BlockPartition>(found.begin(), found.end()) == oracle_orbits(g),
                  "n=" + std::to_string(n) + " code=" + std::to_string(code));
      }
    }
    std::mt19937_64 rng(7);
    for (int t = 0; t < 1000; ++t) {
      const auto g = oracle::random_graph(primes, 0.5, rng);
      const auto found = find_block_partitions(g);
      o.require(std::set<BlockPartition>(found.begin(), found.end()) == oracle_orbits(g), "random sample " + std::to_string(t));
    }
    return o;
  });

  run("8", "commuting coprime pairs; central Sylow iff non-vertex", 0, [&] {
    Outcome o;
    std::size_t pairs = 0;
    std::mt19937_64 rng(11);
    for (const auto& [file, spec] : groups) {
      const auto evaluated = evaluate(spec.construct);
      const auto r = verify_theorem_A(spec.construct);
      for (Prime p : nt::prime_divisors(r.order)) {
        bool central = false;
        if (const auto* m = std::get_if<MetabelianGroup>(&evaluated)) {
          central = sylow_is_central(*m, p);
        } else {
          central = sylow_is_central(as_permutation_group(evaluated), p);
        }
        o.require(central != (r.graph.vertices().count(p) != 0), file + ": p=" + std::to_string(p));
      }
      if (r.order > 5000) continue;
      const auto g = perm_form(evaluated);
      const auto map = class_map(g);
      auto primes_of = [&](std::size_t i) { return nt::prime_divisors(map.class_size[map.class_of[i]]); };
      for (int t = 0; t < 20000; ++t) {
        const auto x = rng() % g.order();
        const auto y = rng() % g.order();
        if (std::gcd(g.element_order(x), g.element_order(y)) != 1) continue;
        if (g.multiply(x, y) != g.multiply(y, x)) continue;
        auto lhs = primes_of(x);
        for (auto p : primes_of(y)) lhs.insert(p);
        const auto rhs = primes_of(g.multiply(x, y));
        o.require(std::includes(rhs.begin(), rhs.end(), lhs.begin(), lhs.end()), file + ": pair violates inclusion");
        ++pairs;
      }
    }
    o.require(pairs >= 10000, "only " + std::to_string(pairs) + " pairs sampled");
    if (o.ok) o.detail = std::to_string(pairs) + " pairs";
    return o;
  });

  run("9", "non-neighbourhoods are cliques on every corpus graph", 0, [&] {
    Outcome o;
    for (const auto& [file, spec] : groups) {
      const auto r = verify_theorem_A(spec.construct);
      for (Prime v : r.graph.vertices()) {
        o.require(is_clique(r.graph, non_neighbors(r.graph, v)), file + ": vertex " + std::to_string(v));
      }
      for (const auto& p : r.partitions) {
        o.require(is_admissible_block_square(r.graph, p), file + ": block square not admissible");
      }
    }
    return o;
  });

  std::printf("%s\n", failures == 0 ? "ALL PASS" : (std::to_string(failures) + " FAILED").c_str());
  return failures == 0 ? 0 : 1;
}
