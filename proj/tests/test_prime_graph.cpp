#include <gtest/gtest.h>

#include <random>

#include "classgraph.hpp"
#include "oracles.hpp"

using namespace classgraph;

namespace {

PrimeGraph square() {
  PrimeGraph g;
  for (Prime p : {3, 5, 7, 11}) g.add_vertex(p);
  g.add_edge(3, 5);
  g.add_edge(3, 11);
  g.add_edge(7, 5);
  g.add_edge(7, 11);
  return g;
}

Spectrum list(std::vector<std::uint64_t> v) { return spectrum_from_list(v); }

}  // namespace

TEST(DeltaOf, Examples) {
  auto z6 = delta_of(list({1, 1, 1, 1, 1, 1}));
  EXPECT_TRUE(z6.vertices().empty());
  auto f21 = delta_of(list({1, 3, 3, 7, 7}));
  EXPECT_EQ(f21.vertices(), (PrimeSet{3, 7}));
  EXPECT_TRUE(f21.edges().empty());
  auto s4 = delta_of(list({1, 6, 8, 3, 6}));
  EXPECT_EQ(s4.vertices(), (PrimeSet{2, 3}));
  EXPECT_TRUE(s4.adjacent(2, 3));
  EXPECT_TRUE(delta_of(list({1})).vertices().empty());
  EXPECT_THROW(delta_of(Spectrum{}), Error);
}

TEST(DeltaOf, LargeClassSizesFactorExactly) {
  // two primes above the trial-division table
  const std::uint64_t p = 1'000'003, q = 998'244'353;
  auto g = delta_of(list({1, p * q, 6}));
  EXPECT_EQ(g.vertices(), (PrimeSet{2, 3, p, q}));
  EXPECT_TRUE(g.adjacent(p, q));
  EXPECT_FALSE(g.adjacent(2, p));
}

TEST(DeltaOf, AgreesWithNaiveDefinition) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    std::vector<std::uint64_t> sizes{1};
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) sizes.push_back(1 + rng() % 5000);
    const auto s = list(sizes);
    EXPECT_EQ(delta_of(s), oracle::to_prime_graph(oracle::naive_delta(s)));
  }
}

// Δ(S1 ∪ S2) contains Δ(S1); a product spectrum joins the two vertex sets.
TEST(DeltaOf, MonotoneAndProductJoin) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint64_t> a{1}, b{1};
    for (int i = 0; i < 4; ++i) a.push_back(1 + rng() % 300);
    for (int i = 0; i < 4; ++i) b.push_back(1 + rng() % 300);
    auto ga = delta_of(list(a));
    auto gb = delta_of(list(b));
    auto ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    auto gu = delta_of(list(ab));
    for (auto v : ga.vertices()) EXPECT_TRUE(gu.vertices().count(v));
    for (auto e : ga.edges()) EXPECT_TRUE(gu.edges().count(e));
    auto gp = delta_of(spectrum_product(list(a), list(b)));
    for (auto p : ga.vertices()) {
      for (auto q : gb.vertices()) {
        if (p != q) EXPECT_TRUE(gp.adjacent(p, q));
      }
    }
  }
}

TEST(Components, Examples) {
  auto f21 = delta_of(list({1, 3, 3, 7, 7}));
  EXPECT_EQ(components(f21), (std::vector<PrimeSet>{{3}, {7}}));
  EXPECT_EQ(components(square()).size(), 1U);
  auto s4 = delta_of(list({1, 3, 6, 6, 8}));
  EXPECT_EQ(components(s4), (std::vector<PrimeSet>{{2, 3}}));
  EXPECT_TRUE(components(PrimeGraph{}).empty());
}

TEST(Clique, Examples) {
  auto g = square();
  EXPECT_TRUE(is_clique(g, {7}));
  EXPECT_FALSE(is_clique(g, {3, 7}));
  EXPECT_TRUE(is_clique(g, {3, 5}));
  try {
    is_clique(g, {2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VertexNotInGraph);
  }
}

TEST(CompleteVertices, Examples) {
  PrimeGraph k3;
  for (Prime p : {2, 3, 5}) k3.add_vertex(p);
  k3.add_edge(2, 3);
  k3.add_edge(2, 5);
  k3.add_edge(3, 5);
  EXPECT_EQ(complete_vertices(k3), (PrimeSet{2, 3, 5}));
  EXPECT_TRUE(complete_vertices(square()).empty());
  PrimeGraph star;
  for (Prime p : {2, 3, 5, 7}) star.add_vertex(p);
  for (Prime p : {3, 5, 7}) star.add_edge(2, p);
  EXPECT_EQ(complete_vertices(star), (PrimeSet{2}));
}

TEST(Graph, Basics) {
  PrimeGraph g;
  g.add_vertex(2);
  EXPECT_THROW(g.add_edge(2, 3), Error);
  g.add_vertex(3);
  g.add_edge(3, 2);
  g.add_edge(2, 2);
  EXPECT_EQ(g.edges().size(), 1U);
  EXPECT_TRUE(g.adjacent(2, 3));
  EXPECT_EQ(non_neighbors(square(), 3), (PrimeSet{7}));
}

TEST(ExportDot, Examples) {
  EXPECT_EQ(export_dot(PrimeGraph{}), "graph delta {\n}\n");
  PrimeGraph e;
  e.add_vertex(2);
  e.add_vertex(3);
  e.add_edge(2, 3);
  EXPECT_NE(export_dot(e).find("  2 -- 3;\n"), std::string::npos);
  EXPECT_EQ(export_dot(square()),
            "graph delta {\n  3;\n  5;\n  7;\n  11;\n  3 -- 5;\n  3 -- 11;\n  5 -- 7;\n  7 -- 11;\n}\n");
}
