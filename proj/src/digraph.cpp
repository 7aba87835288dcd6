#include "phom/digraph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace phom {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

template <typename EdgeRange>
std::size_t count_components(Vertex n, const EdgeRange& pairs) {
  DisjointSets sets(static_cast<std::size_t>(n));
  std::size_t components = static_cast<std::size_t>(n);
  for (const auto& [u, v] : pairs)
    if (sets.unite(static_cast<std::size_t>(u), static_cast<std::size_t>(v))) --components;
  return components;
}

}  // namespace

Digraph::Digraph(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
  for (const auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  const auto un = static_cast<std::size_t>(n);
  adjacency_.assign(un * un, 0);
  out_offset_.assign(un + 1, 0);
  in_offset_.assign(un + 1, 0);
  for (const auto& [u, v] : edges_) {
    adjacency_[static_cast<std::size_t>(u) * un + v] = 1;
    ++out_offset_[u + 1];
    ++in_offset_[v + 1];
  }
  std::partial_sum(out_offset_.begin(), out_offset_.end(), out_offset_.begin());
  std::partial_sum(in_offset_.begin(), in_offset_.end(), in_offset_.begin());
  out_.resize(edges_.size());
  in_.resize(edges_.size());
  std::vector<std::size_t> in_fill(in_offset_.begin(), in_offset_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto [u, v] = edges_[i];
    out_[i] = v;  // edges are sorted, so the out-lists line up with edges_
    in_[in_fill[v]++] = u;
  }
}

std::optional<std::size_t> Digraph::edge_index(Vertex u, Vertex v) const {
  if (!has_edge(u, v)) return std::nullopt;
  const auto outs = out_neighbors(u);
  const auto it = std::lower_bound(outs.begin(), outs.end(), v);
  return out_offset_[u] + static_cast<std::size_t>(it - outs.begin());
}

double Digraph::density() const {
  if (n_ < 2) return 0.0;
  return static_cast<double>(edges_.size()) / (static_cast<double>(n_) * (n_ - 1));
}

Digraph Digraph::induced_subgraph(std::span<const Vertex> vertices) const {
  std::vector<Vertex> relabel(static_cast<std::size_t>(n_), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (relabel[vertices[i]] != -1) throw std::invalid_argument("repeated vertex in induced_subgraph");
    relabel[vertices[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> sub;
  for (const Vertex u : vertices)
    for (const Vertex v : out_neighbors(u))
      if (relabel[v] != -1) sub.emplace_back(relabel[u], relabel[v]);
  return Digraph(static_cast<Vertex>(vertices.size()), std::move(sub));
}

UMultigraph::UMultigraph(Vertex n, std::vector<UndirectedEdge> edges) : n_(n), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n || e.u == e.v) throw std::invalid_argument("invalid undirected edge");
    if (e.multiplicity < 1 || e.multiplicity > 2) throw std::invalid_argument("multiplicity must be 1 or 2");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const auto& a, const auto& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
      throw std::invalid_argument("repeated undirected edge; use multiplicity instead");

  adj_offset_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges_) {
    ++adj_offset_[e.u + 1];
    ++adj_offset_[e.v + 1];
  }
  std::partial_sum(adj_offset_.begin(), adj_offset_.end(), adj_offset_.begin());
  adj_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(adj_offset_.begin(), adj_offset_.end() - 1);
  for (const auto& e : edges_) {
    adj_[fill[e.u]++] = e.v;
    adj_[fill[e.v]++] = e.u;
  }
  for (Vertex v = 0; v < n; ++v) std::sort(adj_.begin() + adj_offset_[v], adj_.begin() + adj_offset_[v + 1]);
}

std::size_t UMultigraph::total_multiplicity() const {
  std::size_t total = 0;
  for (const auto& e : edges_) total += static_cast<std::size_t>(e.multiplicity);
  return total;
}

bool UMultigraph::is_simple() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const auto& e) { return e.multiplicity == 1; });
}

bool UMultigraph::adjacent(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

namespace {

UMultigraph symmetrize(const Digraph& g, bool keep_multiplicity) {
  std::vector<UndirectedEdge> out;
  for (const auto& [u, v] : g.edges()) {
    if (u < v) {
      out.push_back({u, v, (keep_multiplicity && g.has_edge(v, u)) ? 2 : 1});
    } else if (!g.has_edge(v, u)) {
      out.push_back({v, u, 1});
    }
  }
  return UMultigraph(g.vertex_count(), std::move(out));
}

}  // namespace

UMultigraph flat_symmetrization(const Digraph& g) { return symmetrize(g, false); }
UMultigraph weak_symmetrization(const Digraph& g) { return symmetrize(g, true); }

std::size_t weak_components(const Digraph& g) { return count_components(g.vertex_count(), g.edges()); }

std::size_t weak_components(const UMultigraph& g) {
  std::vector<Edge> pairs;
  pairs.reserve(g.edges().size());
  for (const auto& e : g.edges()) pairs.emplace_back(e.u, e.v);
  return count_components(g.vertex_count(), pairs);
}

std::size_t cycle_rank(const UMultigraph& g) {
  return g.total_multiplicity() + weak_components(g) - static_cast<std::size_t>(g.vertex_count());
}

double pbar(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
  return 1.0 - (1.0 - p) * (1.0 - p);
}

Digraph sample_er(const ErParams& params) {
  if (params.n < 1) throw std::invalid_argument("n must be at least 1");
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  std::vector<Edge> edges;
  const std::uint64_t base = derive_seed(params.seed);
  for (Vertex u = 0; u < params.n; ++u) {
    const std::uint64_t row = splitmix64(base ^ splitmix64(static_cast<std::uint64_t>(u)));
    for (Vertex v = 0; v < params.n; ++v) {
      if (u == v) continue;
      const double x = to_unit_interval(splitmix64(row + static_cast<std::uint64_t>(v) * 0xd1b54a32d192ed03ULL));
      if (x < params.p) edges.emplace_back(u, v);
    }
  }
  return Digraph(params.n, std::move(edges));
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

// Splits a line into whitespace-separated tokens; returns false for blank or
// comment lines.
bool tokenize(const std::string& line, std::vector<std::string>& tokens) {
  tokens.clear();
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tokens.empty() && tok.front() == '#') return false;
    tokens.push_back(tok);
  }
  return !tokens.empty();
}

}  // namespace

ParsedGraph parse_edge_list(std::istream& text, std::istream* labels) {
  ParsedGraph result;
  std::unordered_map<std::string, Vertex> index;
  auto intern = [&](const std::string& id) {
    const auto [it, inserted] = index.emplace(id, static_cast<Vertex>(result.vertex_ids.size()));
    if (inserted) result.vertex_ids.push_back(id);
    return it->second;
  };

  std::vector<Edge> edges;
  std::vector<std::string> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(text, line)) {
    ++line_no;
    if (!tokenize(line, tokens)) continue;
    if (tokens.size() != 2)
      throw ParseError(line_no, "expected two vertex ids, found " + std::to_string(tokens.size()) + " tokens");
    const Vertex u = intern(tokens[0]);
    const Vertex v = intern(tokens[1]);
    if (u == v) {
      ++result.dropped_self_loops;
      continue;
    }
    edges.emplace_back(u, v);
  }
  const std::size_t raw = edges.size();
  result.graph = Digraph(static_cast<Vertex>(result.vertex_ids.size()), std::move(edges));
  result.duplicate_edges = raw - result.graph.edge_count();

  if (labels != nullptr) {
    std::vector<std::string> vertex_labels(result.vertex_ids.size());
    line_no = 0;
    while (std::getline(*labels, line)) {
      ++line_no;
      if (!tokenize(line, tokens)) continue;
      if (tokens.size() != 2)
        throw ParseError(line_no, "expected 'vertex label', found " + std::to_string(tokens.size()) + " tokens");
      const auto it = index.find(tokens[0]);
      if (it == index.end()) throw ParseError(line_no, "label for unknown vertex '" + tokens[0] + "'");
      vertex_labels[it->second] = tokens[1];
    }
    result.labels = std::move(vertex_labels);
  }
  return result;
}

void write_edge_list(std::ostream& out, const Digraph& g) {
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace phom
