#include "phom/path_complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace phom {

std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::nonregular: return "nonregular";
    case Flavor::regular: return "regular";
    case Flavor::dflag: return "dflag";
    case Flavor::clique: return "clique";
  }
  return "unknown";
}

std::optional<Flavor> parse_flavor(std::string_view name) {
  for (const Flavor f : {Flavor::nonregular, Flavor::regular, Flavor::dflag, Flavor::clique})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

bool ElementaryPath::is_regular() const {
  return std::adjacent_find(vertices.begin(), vertices.end()) == vertices.end();
}

bool ElementaryPath::is_allowed_in(const Digraph& g) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] < 0 || vertices[i] >= g.vertex_count()) return false;
  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (!g.has_edge(vertices[i - 1], vertices[i])) return false;
  return true;
}

std::optional<Index> PathList::find(std::span<const Vertex> tuple) const {
  if (tuple.size() != width()) return std::nullopt;
  Index lo = 0, hi = size();
  while (lo < hi) {
    const Index mid = lo + (hi - lo) / 2;
    const auto row = (*this)[mid];
    if (std::lexicographical_compare(row.begin(), row.end(), tuple.begin(), tuple.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::equal(tuple.begin(), tuple.end(), (*this)[lo].begin())) return lo;
  return std::nullopt;
}

void PathList::push_back(std::span<const Vertex> tuple) {
  if (tuple.size() != width()) throw std::invalid_argument("tuple length does not match PathList degree");
  flat_.insert(flat_.end(), tuple.begin(), tuple.end());
}

void PathList::sort_unique() {
  std::vector<VertexTuple> rows = to_vectors();
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  flat_.clear();
  for (const auto& r : rows) flat_.insert(flat_.end(), r.begin(), r.end());
}

std::vector<VertexTuple> PathList::to_vectors() const {
  std::vector<VertexTuple> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (Index i = 0; i < size(); ++i) {
    const auto row = (*this)[i];
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

namespace {

void require_degree(int p) {
  if (p < 0) throw std::invalid_argument("degree must be nonnegative");
}

// Depth-first extension; `next` yields admissible successors of the prefix in
// increasing order, so output is lexicographic.
template <typename Next>
PathList enumerate_tuples(Vertex n, int p, Next&& next) {
  PathList out(p);
  VertexTuple prefix;
  prefix.reserve(static_cast<std::size_t>(p) + 1);
  auto extend = [&](auto& self) -> void {
    if (prefix.size() == static_cast<std::size_t>(p) + 1) {
      out.push_back(prefix);
      return;
    }
    const auto candidates = next(prefix);
    const std::vector<Vertex> local(candidates.begin(), candidates.end());  // next() may reuse storage
    for (const Vertex v : local) {
      prefix.push_back(v);
      self(self);
      prefix.pop_back();
    }
  };
  for (Vertex v = 0; v < n; ++v) {
    prefix.assign(1, v);
    extend(extend);
  }
  return out;
}

struct TupleHash {
  std::size_t operator()(const VertexTuple& t) const {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (const Vertex v : t) h = splitmix64(h ^ static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
  }
};

ChainBasis identity_basis(PathList cells, int degree, Flavor flavor) {
  ChainBasis b;
  b.degree = degree;
  b.flavor = flavor;
  const Index m = cells.size();
  b.cells = std::move(cells);
  b.generators = SparseRationalMatrix(m, m);
  b.generators.setIdentity();
  b.free_cell.resize(static_cast<std::size_t>(m));
  std::iota(b.free_cell.begin(), b.free_cell.end(), Index{0});
  b.generator_of_cell = b.free_cell;
  return b;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

PathList allowed_path_list(const Digraph& g, int p) {
  require_degree(p);
  return enumerate_tuples(g.vertex_count(), p,
                          [&](const VertexTuple& prefix) { return g.out_neighbors(prefix.back()); });
}

std::vector<ElementaryPath> allowed_paths(const Digraph& g, int p) {
  std::vector<ElementaryPath> out;
  for (auto& t : allowed_path_list(g, p).to_vectors()) out.push_back(ElementaryPath{std::move(t)});
  return out;
}

PathList dflag_simplex_list(const Digraph& g, int k) {
  require_degree(k);
  std::vector<Vertex> scratch;
  return enumerate_tuples(g.vertex_count(), k, [&](const VertexTuple& prefix) -> const std::vector<Vertex>& {
    scratch.clear();
    for (const Vertex v : g.out_neighbors(prefix.back()))
      if (std::all_of(prefix.begin(), prefix.end() - 1, [&](Vertex u) { return g.has_edge(u, v); }))
        scratch.push_back(v);
    return scratch;
  });
}

std::vector<VertexTuple> dflag_simplices(const Digraph& g, int k) { return dflag_simplex_list(g, k).to_vectors(); }

PathList clique_simplex_list(const UMultigraph& u, int k) {
  require_degree(k);
  if (!u.is_simple()) throw std::invalid_argument("clique complex needs an undirected graph without double edges");
  std::vector<Vertex> scratch;
  return enumerate_tuples(u.vertex_count(), k, [&](const VertexTuple& prefix) -> const std::vector<Vertex>& {
    scratch.clear();
    for (const Vertex v : u.neighbors(prefix.back()))
      if (v > prefix.back() &&
          std::all_of(prefix.begin(), prefix.end() - 1, [&](Vertex w) { return u.adjacent(w, v); }))
        scratch.push_back(v);
    return scratch;
  });
}

std::vector<VertexTuple> clique_simplices(const UMultigraph& u, int k) {
  return clique_simplex_list(u, k).to_vectors();
}

ChainBasis omega_basis(const Digraph& g, int p, Flavor flavor) {
  if (flavor != Flavor::nonregular && flavor != Flavor::regular)
    throw std::invalid_argument("omega_basis needs a path homology flavor");
  PathList cells = allowed_path_list(g, p);
  if (p <= 1) return identity_basis(std::move(cells), p, flavor);

  // Constraint rows: every face of an allowed path that is not itself allowed.
  // Only interior faces can fail, and only through the new pair (v_{i-1}, v_{i+1}).
  std::unordered_map<VertexTuple, Index, TupleHash> row_of_face;
  struct Entry {
    Index row;
    Index cell;
    int sign;
  };
  std::vector<Entry> entries;
  VertexTuple face;
  for (Index c = 0; c < cells.size(); ++c) {
    const auto path = cells[c];
    for (int i = 1; i < p; ++i) {
      const Vertex before = path[static_cast<std::size_t>(i) - 1];
      const Vertex after = path[static_cast<std::size_t>(i) + 1];
      if (before == after) {
        if (flavor == Flavor::regular) continue;  // projected to zero
      } else if (g.has_edge(before, after)) {
        continue;
      }
      face.assign(path.begin(), path.end());
      face.erase(face.begin() + i);
      const auto [it, inserted] = row_of_face.emplace(face, static_cast<Index>(row_of_face.size()));
      entries.push_back({it->second, c, (i % 2 == 0) ? 1 : -1});
    }
  }

  const auto ncells = static_cast<std::size_t>(cells.size());
  DisjointSets blocks(ncells);
  std::vector<Index> first_cell_of_row(row_of_face.size(), -1);
  std::vector<bool> constrained(ncells, false);
  for (const auto& e : entries) {
    constrained[static_cast<std::size_t>(e.cell)] = true;
    auto& first = first_cell_of_row[static_cast<std::size_t>(e.row)];
    if (first < 0)
      first = e.cell;
    else
      blocks.unite(static_cast<std::size_t>(first), static_cast<std::size_t>(e.cell));
  }

  // Group cells and constraint rows by block root.
  std::map<std::size_t, std::vector<Index>> block_cells;
  for (Index c = 0; c < cells.size(); ++c)
    if (constrained[static_cast<std::size_t>(c)]) block_cells[blocks.find(static_cast<std::size_t>(c))].push_back(c);
  std::map<std::size_t, std::vector<const Entry*>> block_entries;
  for (const auto& e : entries) block_entries[blocks.find(static_cast<std::size_t>(e.cell))].push_back(&e);

  struct Generator {
    Index free;
    std::vector<std::pair<Index, Rational>> coeffs;
  };
  std::vector<Generator> gens;
  for (Index c = 0; c < cells.size(); ++c)
    if (!constrained[static_cast<std::size_t>(c)]) gens.push_back({c, {{c, Rational(1)}}});

  for (const auto& [root, members] : block_cells) {
    const auto& es = block_entries[root];
    std::unordered_map<Index, Index> local_row;
    for (const Entry* e : es) local_row.emplace(e->row, static_cast<Index>(local_row.size()));
    std::unordered_map<Index, Index> local_col;
    for (std::size_t k = 0; k < members.size(); ++k) local_col.emplace(members[k], static_cast<Index>(k));

    RationalMatrix constraint = RationalMatrix::Zero(static_cast<Index>(local_row.size()),
                                                     static_cast<Index>(members.size()));
    for (const Entry* e : es) constraint(local_row[e->row], local_col[e->cell]) += e->sign;

    const RationalVectorBasis kernel = null_space(constraint);
    for (const auto& v : kernel.vectors) {
      Generator gen{-1, {}};
      for (Index k = 0; k < v.size(); ++k) {
        if (v(k) == 0) continue;
        gen.coeffs.emplace_back(members[static_cast<std::size_t>(k)], v(k));
      }
      // The free coordinate is the unique non-pivot column set to 1; it is
      // the last nonzero because pivots precede it in first-nonzero order.
      gen.free = gen.coeffs.back().first;
      gens.push_back(std::move(gen));
    }
  }
  std::sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a.free < b.free; });

  ChainBasis b;
  b.degree = p;
  b.flavor = flavor;
  b.generator_of_cell.assign(ncells, -1);
  std::vector<Eigen::Triplet<Rational, Index>> triplets;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    b.free_cell.push_back(gens[j].free);
    b.generator_of_cell[static_cast<std::size_t>(gens[j].free)] = static_cast<Index>(j);
    for (auto& [cell, x] : gens[j].coeffs) triplets.emplace_back(cell, static_cast<Index>(j), std::move(x));
  }
  b.generators = SparseRationalMatrix(cells.size(), static_cast<Index>(gens.size()));
  b.generators.setFromTriplets(triplets.begin(), triplets.end());
  b.cells = std::move(cells);
  return b;
}

ChainBasis dflag_basis(const Digraph& g, int k) { return identity_basis(dflag_simplex_list(g, k), k, Flavor::dflag); }

ChainBasis clique_basis(const UMultigraph& u, int k) {
  return identity_basis(clique_simplex_list(u, k), k, Flavor::clique);
}

ChainBasis chain_basis(const Digraph& g, int degree, Flavor flavor) {
  switch (flavor) {
    case Flavor::nonregular:
    case Flavor::regular: return omega_basis(g, degree, flavor);
    case Flavor::dflag: return dflag_basis(g, degree);
    case Flavor::clique: return clique_basis(flat_symmetrization(g), degree);
  }
  throw std::invalid_argument("unknown flavor");
}

RationalVector ChainBasis::coordinates(const RationalVector& ambient) const {
  RationalVector out(rank());
  for (Index j = 0; j < rank(); ++j) out(j) = ambient(free_cell[static_cast<std::size_t>(j)]);
  return out;
}

BoundaryMatrix augmentation(const ChainBasis& degree_zero) {
  if (degree_zero.degree != 0) throw std::invalid_argument("augmentation needs the degree-0 basis");
  BoundaryMatrix out{0, degree_zero.flavor, SparseRationalMatrix(1, degree_zero.rank())};
  std::vector<Eigen::Triplet<Rational, Index>> triplets;
  for (Index j = 0; j < degree_zero.rank(); ++j) triplets.emplace_back(0, j, Rational(1));
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

BoundaryMatrix boundary_matrix(const ChainBasis& source, const ChainBasis& target) {
  if (source.degree != target.degree + 1 || source.flavor != target.flavor)
    throw std::invalid_argument("boundary_matrix needs consecutive bases of one flavor");
  const bool drop_irregular = source.flavor == Flavor::regular;
  const int p = source.degree;
  std::vector<Eigen::Triplet<Rational, Index>> triplets;
  VertexTuple face;
  for (Index j = 0; j < source.generators.outerSize(); ++j) {
    for (SparseRationalMatrix::InnerIterator it(source.generators, j); it; ++it) {
      const auto cell = source.cells[it.row()];
      for (int i = 0; i <= p; ++i) {
        face.assign(cell.begin(), cell.end());
        face.erase(face.begin() + i);
        if (drop_irregular && std::adjacent_find(face.begin(), face.end()) != face.end()) continue;
        const auto t = target.cells.find(face);
        // Faces outside the target's ambient basis cancel within the generator.
        if (!t) continue;
        const Index row = target.generator_of_cell[static_cast<std::size_t>(*t)];
        if (row < 0) continue;
        triplets.emplace_back(row, j, (i % 2 == 0) ? it.value() : Rational(-it.value()));
      }
    }
  }
  BoundaryMatrix out{p, source.flavor, SparseRationalMatrix(target.rank(), source.rank())};
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  out.matrix.prune([](Index, Index, const Rational& v) { return v != 0; });
  return out;
}

BoundaryMatrix boundary_matrix(const Digraph& g, int p, Flavor flavor) {
  const ChainBasis source = chain_basis(g, p, flavor);
  if (p == 0) return augmentation(source);
  return boundary_matrix(source, chain_basis(g, p - 1, flavor));
}

std::vector<std::pair<VertexTuple, Rational>> ambient_boundary(const ChainBasis& source, const RationalVector& chain) {
  std::map<VertexTuple, Rational> acc;
  const bool drop_irregular = source.flavor == Flavor::regular;
  for (Index c = 0; c < chain.size(); ++c) {
    if (chain(c) == 0) continue;
    const auto cell = source.cells[c];
    for (int i = 0; i <= source.degree; ++i) {
      VertexTuple face(cell.begin(), cell.end());
      face.erase(face.begin() + i);
      if (drop_irregular && std::adjacent_find(face.begin(), face.end()) != face.end()) continue;
      acc[face] += (i % 2 == 0) ? chain(c) : Rational(-chain(c));
    }
  }
  std::vector<std::pair<VertexTuple, Rational>> out;
  for (auto& [face, x] : acc)
    if (x != 0) out.emplace_back(face, std::move(x));
  return out;
}

}  // namespace phom
