#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phom {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple directed graph on dense vertex indices 0..n-1.
///
/// No self-loops, no repeated ordered pairs; reciprocal ("double") edges are
/// allowed. Edges are kept sorted lexicographically, which is also the order of
/// the degree-1 chain basis. Immutable after construction.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(Vertex n) : Digraph(n, {}) {}
  /// Throws std::invalid_argument on self-loops or out-of-range endpoints.
  /// Repeated pairs are merged.
  Digraph(Vertex n, std::vector<Edge> edges);

  Vertex vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Vertex> out_neighbors(Vertex v) const {
    return {out_.data() + out_offset_[v], out_.data() + out_offset_[v + 1]};
  }
  std::span<const Vertex> in_neighbors(Vertex v) const {
    return {in_.data() + in_offset_[v], in_.data() + in_offset_[v + 1]};
  }

  bool has_edge(Vertex u, Vertex v) const {
    return u != v && adjacency_[static_cast<std::size_t>(u) * n_ + v] != 0;
  }
  /// Position of (u, v) in edges(), if present.
  std::optional<std::size_t> edge_index(Vertex u, Vertex v) const;

  /// |E| / (n (n-1)); zero when n < 2.
  double density() const;

  /// Subgraph induced on `vertices`, relabelled 0..k-1 in the given order.
  Digraph induced_subgraph(std::span<const Vertex> vertices) const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offset_{0};
  std::vector<Vertex> out_;
  std::vector<std::size_t> in_offset_{0};
  std::vector<Vertex> in_;
  std::vector<std::uint8_t> adjacency_;
};

/// Undirected multigraph; each pair {u, v} (u < v) carries multiplicity 1 or 2.
struct UndirectedEdge {
  Vertex u;
  Vertex v;
  int multiplicity;
  friend bool operator==(const UndirectedEdge&, const UndirectedEdge&) = default;
};

class UMultigraph {
 public:
  UMultigraph() = default;
  UMultigraph(Vertex n, std::vector<UndirectedEdge> edges);

  Vertex vertex_count() const { return n_; }
  std::span<const UndirectedEdge> edges() const { return edges_; }
  /// Edge count with multiplicity.
  std::size_t total_multiplicity() const;
  bool is_simple() const;
  bool adjacent(Vertex u, Vertex v) const;
  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + adj_offset_[v], adj_.data() + adj_offset_[v + 1]};
  }

 private:
  Vertex n_ = 0;
  std::vector<UndirectedEdge> edges_;
  std::vector<std::size_t> adj_offset_{0};
  std::vector<Vertex> adj_;
};

UMultigraph flat_symmetrization(const Digraph& g);
UMultigraph weak_symmetrization(const Digraph& g);

std::size_t weak_components(const Digraph& g);
std::size_t weak_components(const UMultigraph& g);
/// |E| - |V| + #components, edges counted with multiplicity.
std::size_t cycle_rank(const UMultigraph& g);

/// Probability that an undirected pair is joined in a random digraph: 1 - (1-p)^2.
double pbar(double p);

// ---------------------------------------------------------------------------
// Counter-based randomness

/// SplitMix64 finaliser. Used as a counter-based generator: every random
/// decision is a pure function of (seed, counters), so results do not depend
/// on iteration or thread order.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed) { return splitmix64(seed); }

template <typename... Rest>
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t next, Rest... rest) {
  return derive_seed(splitmix64(seed ^ splitmix64(next + 0x632be59bd9b4e019ULL)), rest...);
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

struct ErParams {
  Vertex n = 1;
  double p = 0.0;
  std::uint64_t seed = 0;
};

/// Directed Erdos-Renyi graph: every ordered pair (u, v), u != v, is an edge
/// independently with probability p. The decision for (u, v) depends only on
/// (seed, u, v).
Digraph sample_er(const ErParams& params);

// ---------------------------------------------------------------------------
// Edge-list ingestion

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParsedGraph {
  Digraph graph;
  std::vector<std::string> vertex_ids;  ///< original id of each dense vertex
  std::size_t dropped_self_loops = 0;
  std::size_t duplicate_edges = 0;
  /// Label of each dense vertex when a label stream was supplied; empty
  /// string for unlabelled vertices.
  std::optional<std::vector<std::string>> labels;
};

/// Reads "u v" lines ('#' comments, blank lines ignored). Vertex ids are
/// densified in order of first appearance. Optional label stream holds
/// "vertex label" lines.
ParsedGraph parse_edge_list(std::istream& text, std::istream* labels = nullptr);

/// Writes "u v" lines using dense indices.
void write_edge_list(std::ostream& out, const Digraph& g);

}  // namespace phom
