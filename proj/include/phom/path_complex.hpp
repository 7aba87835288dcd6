#pragma once

#include "phom/digraph.hpp"
#include "phom/linalg.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace phom {

/// The chain complexes built over a digraph.
enum class Flavor {
  nonregular,  ///< path homology with the plain boundary
  regular,     ///< path homology with irregular faces projected away
  dflag,       ///< directed flag complex
  clique,      ///< clique complex of an undirected graph
};

std::string_view to_string(Flavor f);
std::optional<Flavor> parse_flavor(std::string_view name);

using VertexTuple = std::vector<Vertex>;

/// An ordered tuple (v0, ..., vp) of vertices.
struct ElementaryPath {
  VertexTuple vertices;

  int degree() const { return static_cast<int>(vertices.size()) - 1; }
  /// No two consecutive vertices coincide.
  bool is_regular() const;
  /// Every consecutive pair is an edge of g.
  bool is_allowed_in(const Digraph& g) const;
  friend auto operator<=>(const ElementaryPath&, const ElementaryPath&) = default;
};

/// Lexicographically sorted list of vertex tuples of one length, stored flat.
class PathList {
 public:
  explicit PathList(int degree = 0) : degree_(degree) {}

  int degree() const { return degree_; }
  std::size_t width() const { return static_cast<std::size_t>(degree_) + 1; }
  Index size() const { return static_cast<Index>(flat_.size() / width()); }
  std::span<const Vertex> operator[](Index i) const {
    return {flat_.data() + static_cast<std::size_t>(i) * width(), width()};
  }
  /// Position of `tuple` (binary search), if present.
  std::optional<Index> find(std::span<const Vertex> tuple) const;

  void push_back(std::span<const Vertex> tuple);
  /// Restores sorted, duplicate-free order after unsorted push_back calls.
  void sort_unique();
  std::vector<VertexTuple> to_vectors() const;

 private:
  int degree_;
  std::vector<Vertex> flat_;
};

/// Allowed p-paths of g in lexicographic order (basis of A_p). Degree 0 gives
/// every vertex.
PathList allowed_path_list(const Digraph& g, int p);
std::vector<ElementaryPath> allowed_paths(const Digraph& g, int p);

/// Ordered directed (k+1)-cliques: (v_i, v_j) is an edge whenever i < j.
PathList dflag_simplex_list(const Digraph& g, int k);
std::vector<VertexTuple> dflag_simplices(const Digraph& g, int k);

/// (k+1)-cliques of a simple undirected graph, as increasing vertex tuples.
/// Throws std::invalid_argument when an edge has multiplicity 2.
PathList clique_simplex_list(const UMultigraph& u, int k);
std::vector<VertexTuple> clique_simplices(const UMultigraph& u, int k);

/// Basis of one chain group.
///
/// `cells` is the ambient standard basis (allowed paths for the path
/// flavours, simplices otherwise) and `generators` holds one column per basis
/// vector of the chain group, expressed in `cells` coordinates. Each generator
/// owns a distinct "free" cell where it has coefficient 1 and every other
/// generator has coefficient 0, so coordinates of a chain in this basis are
/// read off at the free cells.
struct ChainBasis {
  int degree = 0;
  Flavor flavor = Flavor::nonregular;
  PathList cells;
  SparseRationalMatrix generators;
  std::vector<Index> free_cell;          ///< per generator
  std::vector<Index> generator_of_cell;  ///< per cell, -1 if not free

  Index rank() const { return static_cast<Index>(free_cell.size()); }
  /// Coordinates of an ambient chain assumed to lie in the span.
  RationalVector coordinates(const RationalVector& ambient) const;
};

/// Omega_p (flavor nonregular) or Omega_p^reg (flavor regular).
///
/// Degrees 0 and 1 give the standard basis of A_p. For p >= 2 the basis is
/// the null space of the map sending x in A_p to the non-allowed coordinates
/// of its boundary (after dropping irregular faces for the regular flavour),
/// computed block by block over groups of paths that share a constraint.
ChainBasis omega_basis(const Digraph& g, int p, Flavor flavor);
ChainBasis dflag_basis(const Digraph& g, int k);
ChainBasis clique_basis(const UMultigraph& u, int k);
/// Dispatches on flavor; clique uses the flat symmetrization of g.
ChainBasis chain_basis(const Digraph& g, int degree, Flavor flavor);

/// Matrix of a boundary map between chain bases.
///
/// Columns are indexed by the generators of the degree-p basis, rows by the
/// generators of the degree-(p-1) basis; for p = 0 the target is the
/// one-dimensional augmentation and every column is (1).
struct BoundaryMatrix {
  int degree = 0;
  Flavor flavor = Flavor::nonregular;
  SparseRationalMatrix matrix;
};

BoundaryMatrix boundary_matrix(const ChainBasis& source, const ChainBasis& target);
BoundaryMatrix augmentation(const ChainBasis& degree_zero);
BoundaryMatrix boundary_matrix(const Digraph& g, int p, Flavor flavor);

/// Boundary of a chain given in `source.cells` coordinates, expanded over all
/// elementary (p-1)-paths, with irregular faces dropped for the regular
/// flavour. Used by tests to check invariance without going through a basis.
std::vector<std::pair<VertexTuple, Rational>> ambient_boundary(const ChainBasis& source,
                                                               const RationalVector& chain);

}  // namespace phom
