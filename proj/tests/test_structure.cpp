#include "phom/homology.hpp"
#include "phom/structure.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

using namespace phom;

namespace {

const Digraph kDoubleEdge(2, {{0, 1}, {1, 0}});
const Digraph kCycle3(3, {{0, 1}, {1, 2}, {2, 0}});
const Digraph kLongSquare(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});

Digraph complete(Vertex n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) e.emplace_back(u, v);
  return Digraph(n, e);
}

std::vector<std::pair<Edge, int>> sorted_terms(FundamentalCycle c) {
  std::sort(c.terms.begin(), c.terms.end());
  return c.terms;
}

std::vector<Edge> with(std::vector<Edge> base, std::initializer_list<Edge> extra) {
  base.insert(base.end(), extra);
  return base;
}

const UndirectedPath3 kForward{{0, 1, 2, 3}, false, false};
const std::vector<Edge> kForwardEdges{{0, 1}, {1, 2}, {2, 3}};

}  // namespace

TEST_CASE("fundamental cycles of small graphs") {
  const auto de = fundamental_cycle_basis(kDoubleEdge);
  REQUIRE(de.size() == 1);
  CHECK(de[0].non_tree_edge == Edge{1, 0});
  CHECK(sorted_terms(de[0]) == std::vector<std::pair<Edge, int>>{{{0, 1}, 1}, {{1, 0}, 1}});

  const auto c3 = fundamental_cycle_basis(kCycle3);
  REQUIRE(c3.size() == 1);
  CHECK(sorted_terms(c3[0]) == std::vector<std::pair<Edge, int>>{{{0, 1}, 1}, {{1, 2}, 1}, {{2, 0}, 1}});
  CHECK(c3[0].terms.front().second == 1);

  CHECK(fundamental_cycle_basis(Digraph(4, {{0, 1}, {2, 1}, {1, 3}})).empty());
}

TEST_CASE("fundamental cycles are a cycle basis of ker d1") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const Digraph g = sample_er({Vertex(2 + rng() % 9), 0.1 + 0.1 * double(rng() % 8), rng()});
    const auto basis = fundamental_cycle_basis(g);
    CHECK(basis.size() == cycle_rank(weak_symmetrization(g)));
    RationalMatrix stacked = RationalMatrix::Zero(static_cast<Index>(basis.size()), static_cast<Index>(g.edge_count()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& c = basis[i];
      CHECK(c.terms.front().first == c.non_tree_edge);
      CHECK(c.terms.front().second == 1);
      std::vector<int> boundary(g.vertex_count(), 0);
      std::map<Vertex, int> degree;
      for (const auto& [e, s] : c.terms) {
        CHECK((s == 1 || s == -1));
        CHECK(g.has_edge(e.first, e.second));
        boundary[e.second] += s;
        boundary[e.first] -= s;
        ++degree[e.first];
        ++degree[e.second];
        stacked(static_cast<Index>(i), static_cast<Index>(*g.edge_index(e.first, e.second))) = s;
      }
      CHECK(std::all_of(boundary.begin(), boundary.end(), [](int x) { return x == 0; }));
      for (const auto& [v, d] : degree) CHECK(d == 2);
    }
    CHECK(rank(stacked) == static_cast<Index>(basis.size()));
  }
}

TEST_CASE("undirected path helpers") {
  const UndirectedPath3 s{{4, 2, 7, 1}, true, false};
  CHECK(s.motif_class() == 1);
  CHECK(s.to_string() == "4<-2->7->1");
  CHECK(s.edges() == std::array<Edge, 3>{Edge{2, 4}, Edge{2, 7}, Edge{7, 1}});
  CHECK(s.contains(7));
  CHECK_FALSE(s.contains(3));
}

TEST_CASE("reducible shortcuts") {
  CHECK(reducible_shortcut(Digraph(4, with(kForwardEdges, {{1, 3}})), kForward) == Edge{1, 3});
  CHECK_FALSE(reducible_shortcut(Digraph(4, with(kForwardEdges, {{3, 0}})), kForward).has_value());
  CHECK_FALSE(reducible_shortcut(Digraph(4, kForwardEdges), kForward).has_value());
  CHECK_THROWS_AS(reducible_shortcut(Digraph(4, {{0, 1}, {1, 2}}), kForward), std::invalid_argument);
  // The 4-cycle really has beta_1 = 1 and the shortcut graph 0.
  CHECK(oracle::path_betti(Digraph(4, with(kForwardEdges, {{3, 0}})), 1, false)[1] == 1);
  CHECK(oracle::path_betti(Digraph(4, with(kForwardEdges, {{1, 3}})), 1, false)[1] == 0);
}

TEST_CASE("directed centres") {
  CHECK_FALSE(is_directed_centre(Digraph(5, kForwardEdges), kForward, 4).has_value());

  std::vector<Edge> all = kForwardEdges;
  for (int b = 0; b < 8; ++b) all.push_back(linking_edge(b));
  CHECK(is_directed_centre(Digraph(5, all), kForward, 4).has_value());

  // Long square on {kappa, v0, v1, v2} plus a triangle on {kappa, v2, v3}.
  const Digraph g(5, with(kForwardEdges, {{0, 4}, {4, 2}, {4, 3}}));
  const auto w = is_directed_centre(g, kForward, 4);
  REQUIRE(w.has_value());
  CHECK(w->apex == 4);
  CHECK(w->edges.size() == 3);
  std::vector<Edge> sub = kForwardEdges;
  sub.insert(sub.end(), w->edges.begin(), w->edges.end());
  CHECK(oracle::path_betti(Digraph(5, sub), 1, false)[1] == 0);
}

TEST_CASE("directed-centre witnesses survive adding edges") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 300; ++t) {
    std::vector<Edge> e = kForwardEdges, more;
    for (int b = 0; b < 8; ++b) {
      if (rng() % 2) e.push_back(linking_edge(b));
      else if (rng() % 2) more.push_back(linking_edge(b));
    }
    for (const auto& [u, v] : std::vector<Edge>{{0, 2}, {2, 0}, {1, 3}, {3, 1}, {0, 3}, {3, 0}})
      if (rng() % 4 == 0) more.emplace_back(u, v);
    const bool before = is_directed_centre(Digraph(5, e), kForward, 4).has_value();
    e.insert(e.end(), more.begin(), more.end());
    const bool after = is_directed_centre(Digraph(5, e), kForward, 4).has_value();
    if (before) CHECK(after);
  }
}

TEST_CASE("motif tables are closed under supersets") {
  for (MotifHomology h : {MotifHomology::path, MotifHomology::dflag}) {
    const auto& t = motif_tables(h);
    for (int m = 0; m < 4; ++m) {
      CHECK((t.alpha[m] & ~t.gamma[m]).none());
      CHECK(t.gamma[m][255]);
      for (int j = 0; j < 256; ++j)
        for (int b = 0; b < 8; ++b)
          if (t.gamma[m][j]) CHECK(t.gamma[m][j | (1 << b)]);
    }
  }
}

TEST_CASE("motif path edges encode the class bits") {
  CHECK(motif_path_edges(0) == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
  CHECK(motif_path_edges(3) == std::vector<Edge>{{1, 0}, {1, 2}, {3, 2}});
  CHECK(linking_edge(0) == Edge{0, 4});
  CHECK(linking_edge(7) == Edge{4, 3});
}

TEST_CASE("cycle centres") {
  CHECK(has_cycle_centre(Digraph(3, {{0, 1}, {1, 0}, {2, 0}, {2, 1}}), std::vector<Vertex>{0, 1}) == 2);
  const std::vector<Vertex> tri{0, 1, 2};
  CHECK_FALSE(has_cycle_centre(Digraph(4, {{0, 1}, {1, 2}, {2, 0}, {3, 0}, {3, 1}}), tri).has_value());
  CHECK(has_cycle_centre(Digraph(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}}), tri) == 3);
  // Mixed directions do not count.
  CHECK_FALSE(has_cycle_centre(Digraph(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 1}, {2, 3}}), tri).has_value());
}

TEST_CASE("high-density condition") {
  CHECK(high_density_condition(complete(5)).holds);
  CHECK(high_density_condition(Digraph(6)).holds);
  const auto r = high_density_condition(kCycle3);
  CHECK_FALSE(r.holds);
  CHECK(r.cycle == std::vector<Vertex>{0, 1, 2});
  CHECK(r.certificate == "directed 3-cycle (0,1,2) has no cycle centre");
}

TEST_CASE("path certificates are genuine violations") {
  std::mt19937_64 rng(5150);
  int seen = 0;
  for (int t = 0; t < 400 && seen < 20; ++t) {
    const Digraph g = sample_er({Vertex(5 + rng() % 3), 0.5 + 0.05 * double(rng() % 8), rng()});
    const auto r = high_density_condition(g);
    if (r.holds || !r.path) continue;
    ++seen;
    CHECK_FALSE(reducible_shortcut(g, *r.path).has_value());
    for (Vertex k = 0; k < g.vertex_count(); ++k)
      if (!r.path->contains(k)) CHECK_FALSE(is_directed_centre(g, *r.path, k).has_value());
  }
  CHECK(seen > 0);
}

TEST_CASE("the condition forces beta_1 = 0 on every 4-vertex digraph") {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < 4; ++u)
    for (Vertex v = 0; v < 4; ++v)
      if (u != v) pairs.emplace_back(u, v);
  int holding = 0;
  for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1u) e.push_back(pairs[i]);
    const Digraph g(4, e);
    if (!high_density_condition(g).holds) continue;
    ++holding;
    CHECK(betti1(g, Flavor::nonregular) == 0);
    CHECK(betti1(g, Flavor::regular) == 0);
  }
  CHECK(holding > 0);
}

TEST_CASE("the condition forces beta_1 = 0 on dense random digraphs") {
  std::mt19937_64 rng(31337);
  int holding = 0;
  for (int t = 0; t < 60; ++t) {
    const Digraph g = sample_er({Vertex(6 + rng() % 4), 0.7 + 0.05 * double(rng() % 5), rng()});
    if (!high_density_condition(g).holds) continue;
    ++holding;
    CHECK(betti1(g, Flavor::nonregular) == 0);
    CHECK(betti1(g, Flavor::regular) == 0);
  }
  CHECK(holding > 0);
}

TEST_CASE("semi-edges and semi-vertices") {
  const auto p = semi_structure(Digraph(3, {{0, 1}, {1, 2}}));
  CHECK(p.semi_edges == std::vector<Edge>{{0, 2}});
  CHECK(p.semi_vertices.empty());
  CHECK(omega2_rank_fast(Digraph(3, {{0, 1}, {1, 2}}), Flavor::nonregular) == 0);

  const auto d = semi_structure(kDoubleEdge);
  CHECK(d.semi_edges.empty());
  CHECK(d.semi_vertices == std::vector<Vertex>{0, 1});
  CHECK(omega2_rank_fast(kDoubleEdge, Flavor::nonregular) == 0);
  CHECK(omega2_rank_fast(kDoubleEdge, Flavor::regular) == 2);

  CHECK(semi_structure(kLongSquare).semi_edges == std::vector<Edge>{{0, 3}});
  CHECK(omega2_rank_fast(kLongSquare, Flavor::nonregular) == 1);
}

TEST_CASE("fast omega2 rank matches the kernel construction on 300 digraphs") {
  std::mt19937_64 rng(300);
  const double ps[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  for (int t = 0; t < 300; ++t) {
    const Digraph g = sample_er({Vertex(1 + rng() % 8), ps[t % 5], rng()});
    for (Flavor f : {Flavor::nonregular, Flavor::regular})
      CHECK(omega2_rank_fast(g, f) == omega_basis(g, 2, f).rank());
  }
}
