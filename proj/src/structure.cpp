#include "phom/structure.hpp"

#include "phom/homology.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace phom {

std::vector<Edge> FundamentalCycle::support() const {
  std::vector<Edge> out;
  for (const auto& [e, c] : terms) out.push_back(e);
  return out;
}

std::vector<FundamentalCycle> fundamental_cycle_basis(const Digraph& g) {
  const Vertex n = g.vertex_count();
  const UMultigraph flat = flat_symmetrization(g);
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  std::vector<Edge> tree_edge(static_cast<std::size_t>(n), Edge{-1, -1});  // edge to parent
  for (Vertex root = 0; root < n; ++root) {
    if (depth[root] >= 0) continue;
    depth[root] = 0;
    std::queue<Vertex> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const Vertex u = frontier.front();
      frontier.pop();
      for (const Vertex w : flat.neighbors(u)) {
        if (depth[w] >= 0) continue;
        depth[w] = depth[u] + 1;
        parent[w] = u;
        const Edge preferred{std::min(u, w), std::max(u, w)};
        tree_edge[w] = g.has_edge(preferred.first, preferred.second) ? preferred : Edge{preferred.second, preferred.first};
        frontier.push(w);
      }
    }
  }

  auto is_tree = [&](const Edge& e) {
    return (parent[e.second] == e.first && tree_edge[e.second] == e) ||
           (parent[e.first] == e.second && tree_edge[e.first] == e);
  };
  // Signed tree step from x to its parent.
  auto step_up = [&](Vertex x) {
    const Edge e = tree_edge[x];
    return std::pair<Edge, int>{e, e.first == x ? 1 : -1};
  };

  std::vector<FundamentalCycle> out;
  for (const Edge& tau : g.edges()) {
    if (is_tree(tau)) continue;
    FundamentalCycle c;
    c.non_tree_edge = tau;
    c.terms.emplace_back(tau, 1);
    // Walk from the head back to the tail: head -> lca -> tail.
    Vertex a = tau.second, b = tau.first;
    std::vector<std::pair<Edge, int>> down;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        c.terms.push_back(step_up(a));
        a = parent[a];
      } else {
        auto [e, s] = step_up(b);
        down.emplace_back(e, -s);
        b = parent[b];
      }
    }
    c.terms.insert(c.terms.end(), down.rbegin(), down.rend());
    out.push_back(std::move(c));
  }
  return out;
}

std::array<Edge, 3> UndirectedPath3::edges() const {
  return {first_reversed ? Edge{v[1], v[0]} : Edge{v[0], v[1]}, Edge{v[1], v[2]},
          second_reversed ? Edge{v[3], v[2]} : Edge{v[2], v[3]}};
}

std::string UndirectedPath3::to_string() const {
  std::ostringstream s;
  s << v[0] << (first_reversed ? "<-" : "->") << v[1] << "->" << v[2] << (second_reversed ? "<-" : "->") << v[3];
  return s.str();
}

std::vector<Edge> motif_path_edges(int m) {
  UndirectedPath3 p{{0, 1, 2, 3}, (m & 1) != 0, (m & 2) != 0};
  const auto e = p.edges();
  return {e.begin(), e.end()};
}

Edge linking_edge(int bit, Vertex kappa) {
  const Vertex vi = bit / 2;
  return bit % 2 == 0 ? Edge{vi, kappa} : Edge{kappa, vi};
}

namespace {

Index motif_betti1(std::vector<Edge> edges, Vertex n, MotifHomology h) {
  return betti1(Digraph(n, std::move(edges)), h == MotifHomology::path ? Flavor::nonregular : Flavor::dflag);
}

MotifTables build_tables(MotifHomology h) {
  MotifTables t;
  for (int m = 0; m < 4; ++m) {
    const auto sigma = motif_path_edges(m);
    for (std::size_t s = 0; s < kShortcutPairs.size(); ++s) {
      auto edges = sigma;
      edges.push_back(kShortcutPairs[s]);
      t.shortcut[m][s] = motif_betti1(edges, 4, h) == 0;
    }
    for (unsigned J = 0; J < 256; ++J) {
      const bool touches_v0 = (J & 0x03u) != 0;
      const bool touches_v3 = (J & 0xC0u) != 0;
      if (!touches_v0 || !touches_v3) continue;
      auto edges = sigma;
      for (int bit = 0; bit < 8; ++bit)
        if (J & (1u << bit)) edges.push_back(linking_edge(bit));
      t.alpha[m][J] = motif_betti1(edges, 5, h) == 0;
    }
    // Closure over subsets, one bit at a time.
    t.gamma[m] = t.alpha[m];
    for (int bit = 0; bit < 8; ++bit)
      for (unsigned J = 0; J < 256; ++J)
        if ((J & (1u << bit)) && t.gamma[m][J ^ (1u << bit)]) t.gamma[m][J] = true;
  }
  return t;
}

void require_path(const Digraph& g, const UndirectedPath3& sigma) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (sigma.v[i] < 0 || sigma.v[i] >= g.vertex_count()) throw std::invalid_argument("path vertex out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (sigma.v[i] == sigma.v[j]) throw std::invalid_argument("path vertices must be distinct");
  }
  for (const auto& [a, b] : sigma.edges())
    if (!g.has_edge(a, b)) throw std::invalid_argument("path " + sigma.to_string() + " is not in the graph");
}

}  // namespace

const MotifTables& motif_tables(MotifHomology h) {
  static std::once_flag once[2];
  static MotifTables tables[2];
  const auto i = static_cast<std::size_t>(h);
  std::call_once(once[i], [&] { tables[i] = build_tables(h); });
  return tables[i];
}

std::optional<Edge> reducible_shortcut(const Digraph& g, const UndirectedPath3& sigma) {
  require_path(g, sigma);
  const auto& t = motif_tables(MotifHomology::path);
  const int m = sigma.motif_class();
  for (std::size_t s = 0; s < kShortcutPairs.size(); ++s) {
    const Edge e{sigma.v[kShortcutPairs[s].first], sigma.v[kShortcutPairs[s].second]};
    if (t.shortcut[m][s] && g.has_edge(e.first, e.second)) return e;
  }
  return std::nullopt;
}

namespace {

unsigned linking_bits(const Digraph& g, const UndirectedPath3& sigma, Vertex kappa) {
  unsigned bits = 0;
  for (int i = 0; i < 4; ++i) {
    if (g.has_edge(sigma.v[i], kappa)) bits |= 1u << (2 * i);
    if (g.has_edge(kappa, sigma.v[i])) bits |= 1u << (2 * i + 1);
  }
  return bits;
}

}  // namespace

std::optional<LinkingSet> is_directed_centre(const Digraph& g, const UndirectedPath3& sigma, Vertex kappa) {
  if (kappa < 0 || kappa >= g.vertex_count() || sigma.contains(kappa))
    throw std::invalid_argument("apex must be a vertex off the path");
  const auto& t = motif_tables(MotifHomology::path);
  const int m = sigma.motif_class();
  const unsigned present = linking_bits(g, sigma, kappa);
  if (!t.gamma[m][present]) return std::nullopt;
  for (int size = 0; size <= 8; ++size) {
    for (unsigned J = 0; J < 256; ++J) {
      if ((J & ~present) != 0 || std::popcount(J) != size || !t.alpha[m][J]) continue;
      LinkingSet w{sigma, kappa, {}};
      for (int bit = 0; bit < 8; ++bit) {
        if (!(J & (1u << bit))) continue;
        const Edge local = linking_edge(bit);
        auto map = [&](Vertex x) { return x == 4 ? kappa : sigma.v[x]; };
        w.edges.emplace_back(map(local.first), map(local.second));
      }
      return w;
    }
  }
  return std::nullopt;
}

std::optional<Vertex> has_cycle_centre(const Digraph& g, std::span<const Vertex> cycle) {
  for (Vertex k = 0; k < g.vertex_count(); ++k) {
    if (std::find(cycle.begin(), cycle.end(), k) != cycle.end()) continue;
    const bool all_out = std::all_of(cycle.begin(), cycle.end(), [&](Vertex v) { return g.has_edge(k, v); });
    const bool all_in = std::all_of(cycle.begin(), cycle.end(), [&](Vertex v) { return g.has_edge(v, k); });
    if (all_out || all_in) return k;
  }
  return std::nullopt;
}

namespace {

std::string cycle_text(std::span<const Vertex> c) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < c.size(); ++i) s << (i ? "," : "") << c[i];
  s << ')';
  return s.str();
}

}  // namespace

ConditionResult high_density_condition(const Digraph& g) {
  const Vertex n = g.vertex_count();
  ConditionResult r;
  auto fail_cycle = [&](std::vector<Vertex> c) {
    r.holds = false;
    r.certificate = "directed " + std::to_string(c.size()) + "-cycle " + cycle_text(c) + " has no cycle centre";
    r.cycle = std::move(c);
    return r;
  };

  for (const auto& [a, b] : g.edges()) {
    if (a < b && g.has_edge(b, a)) {
      const std::vector<Vertex> c{a, b};
      if (!has_cycle_centre(g, c)) return fail_cycle(c);
    }
  }
  // Each directed 3-cycle once, rotated to start at its lowest vertex.
  for (const auto& [a, b] : g.edges()) {
    if (b < a) continue;
    for (const Vertex c : g.out_neighbors(b)) {
      if (c <= a || !g.has_edge(c, a)) continue;
      const std::vector<Vertex> cyc{a, b, c};
      if (!has_cycle_centre(g, cyc)) return fail_cycle(cyc);
    }
  }

  const UMultigraph flat = flat_symmetrization(g);
  for (const auto& [v1, v2] : g.edges()) {
    for (const Vertex v0 : flat.neighbors(v1)) {
      if (v0 == v2) continue;
      for (const Vertex v3 : flat.neighbors(v2)) {
        if (v3 == v0 || v3 == v1) continue;
        for (int m = 0; m < 4; ++m) {
          const UndirectedPath3 sigma{{v0, v1, v2, v3}, (m & 1) != 0, (m & 2) != 0};
          const auto e = sigma.edges();
          if (!g.has_edge(e[0].first, e[0].second) || !g.has_edge(e[2].first, e[2].second)) continue;
          if (reducible_shortcut(g, sigma)) continue;
          const auto& t = motif_tables(MotifHomology::path);
          bool centred = false;
          for (Vertex k = 0; k < n && !centred; ++k)
            centred = !sigma.contains(k) && t.gamma[m][linking_bits(g, sigma, k)];
          if (!centred) {
            r.holds = false;
            r.path = sigma;
            r.certificate = "path " + sigma.to_string() + " is irreducible and has no directed centre";
            return r;
          }
        }
      }
    }
  }
  return r;
}

SemiStructure semi_structure(const Digraph& g) {
  SemiStructure s;
  const Vertex n = g.vertex_count();
  std::vector<char> reach(static_cast<std::size_t>(n));
  for (Vertex i = 0; i < n; ++i) {
    std::fill(reach.begin(), reach.end(), 0);
    for (const Vertex j : g.out_neighbors(i))
      for (const Vertex k : g.out_neighbors(j)) reach[k] = 1;
    if (reach[i]) s.semi_vertices.push_back(i);
    for (Vertex k = 0; k < n; ++k)
      if (reach[k] && k != i && !g.has_edge(i, k)) s.semi_edges.emplace_back(i, k);
  }
  return s;
}

Index omega2_rank_fast(const Digraph& g, Flavor flavor) {
  if (flavor != Flavor::nonregular && flavor != Flavor::regular)
    throw std::invalid_argument("omega2_rank_fast needs a path homology flavor");
  Index allowed = 0;
  for (Vertex j = 0; j < g.vertex_count(); ++j)
    allowed += static_cast<Index>(g.in_neighbors(j).size() * g.out_neighbors(j).size());
  const SemiStructure s = semi_structure(g);
  Index r = allowed - static_cast<Index>(s.semi_edges.size());
  if (flavor == Flavor::nonregular) r -= static_cast<Index>(s.semi_vertices.size());
  return r;
}

}  // namespace phom
