#pragma once

// Combinatorial predicates behind the high-density vanishing argument: cycle
// bases, shortcut edges, directed and cycle centres, and the semi-edge /
// semi-vertex count of Omega_2.

#include "phom/path_complex.hpp"

#include <array>
#include <bitset>
#include <optional>
#include <string>
#include <vector>

namespace phom {

/// Kernel element of d_1 with +-1 coefficients supported on one undirected cycle.
struct FundamentalCycle {
  Edge non_tree_edge;
  std::vector<std::pair<Edge, int>> terms;  ///< (edge, +-1), non-tree edge first

  std::vector<Edge> support() const;
};

/// One cycle per non-forest edge of a breadth-first spanning forest of the
/// flat symmetrization, rooted at the lowest vertex of each component. A tree
/// pair uses its (min, max) edge when present.
std::vector<FundamentalCycle> fundamental_cycle_basis(const Digraph& g);

/// Undirected path v0 - v1 -> v2 - v3 on distinct vertices, middle edge forward.
struct UndirectedPath3 {
  std::array<Vertex, 4> v{};
  bool first_reversed = false;   ///< edge v1 -> v0 rather than v0 -> v1
  bool second_reversed = false;  ///< edge v3 -> v2 rather than v2 -> v3

  /// 0..3: first_reversed + 2 * second_reversed.
  int motif_class() const { return int(first_reversed) + 2 * int(second_reversed); }
  std::array<Edge, 3> edges() const;
  bool contains(Vertex x) const { return x == v[0] || x == v[1] || x == v[2] || x == v[3]; }
  /// e.g. "0->1->2<-3"
  std::string to_string() const;
  friend bool operator==(const UndirectedPath3&, const UndirectedPath3&) = default;
};

/// Some edge of g between non-consecutive path vertices such that the
/// 4-vertex graph sigma + e has beta_1 = 0. Throws std::invalid_argument when
/// sigma is not a path of g.
std::optional<Edge> reducible_shortcut(const Digraph& g, const UndirectedPath3& sigma);

/// A subset of the 8 possible edges between kappa and the vertices of sigma.
struct LinkingSet {
  UndirectedPath3 sigma;
  Vertex apex = 0;
  std::vector<Edge> edges;
};

/// Smallest (then first in bit order) subset J of the linking edges present
/// in g such that sigma + J has beta_1 = 0 and joins v0 - kappa - v3.
std::optional<LinkingSet> is_directed_centre(const Digraph& g, const UndirectedPath3& sigma, Vertex kappa);

/// Lowest vertex off the directed cycle sending an edge to every cycle vertex
/// or receiving one from each.
std::optional<Vertex> has_cycle_centre(const Digraph& g, std::span<const Vertex> cycle);

struct ConditionResult {
  bool holds = true;
  std::string certificate;  ///< description of the first violation
  std::optional<UndirectedPath3> path;
  std::vector<Vertex> cycle;
};

/// Every irreducible length-3 path has a directed centre and every directed
/// 2- and 3-cycle has a cycle centre.
ConditionResult high_density_condition(const Digraph& g);

struct SemiStructure {
  std::vector<Edge> semi_edges;       ///< (i, k) not an edge, i -> j -> k for some j
  std::vector<Vertex> semi_vertices;  ///< i -> j -> i for some j
};

SemiStructure semi_structure(const Digraph& g);
/// |A_2| - |S_E| - |S_V| (nonregular) or |A_2| - |S_E| (regular).
Index omega2_rank_fast(const Digraph& g, Flavor flavor);

// ---------------------------------------------------------------------------
// Motif tables on the 5-vertex graph sigma_m + kappa.
//
// Vertices 0..3 are v0..v3 and 4 is kappa. Linking edge bit 2i is (v_i,
// kappa) and bit 2i+1 is (kappa, v_i). Shortcut slots follow
// kShortcutPairs.

enum class MotifHomology { path, dflag };

inline constexpr std::array<Edge, 6> kShortcutPairs{{{0, 2}, {2, 0}, {1, 3}, {3, 1}, {0, 3}, {3, 0}}};

struct MotifTables {
  std::array<std::array<bool, 6>, 4> shortcut{};  ///< beta_1(sigma_m + e) = 0
  std::array<std::bitset<256>, 4> alpha;           ///< J itself is a witness
  std::array<std::bitset<256>, 4> gamma;           ///< some subset of J is
};

/// Computed once per homology on first use.
const MotifTables& motif_tables(MotifHomology h);

/// Edges of sigma_m on vertices 0..3.
std::vector<Edge> motif_path_edges(int m);
Edge linking_edge(int bit, Vertex kappa = 4);

}  // namespace phom
