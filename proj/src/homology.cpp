#include "phom/homology.hpp"

#include <stdexcept>

namespace phom {

namespace {

template <typename MakeBasis>
ChainComplexSummary summarize(Flavor flavor, int K, MakeBasis&& make_basis) {
  if (K < 0) throw std::invalid_argument("max degree must be nonnegative");
  ChainComplexSummary s;
  s.flavor = flavor;
  s.max_degree = K;

  ChainBasis below = make_basis(0);
  s.ranks.push_back(below.rank());
  s.boundary_ranks.push_back(below.rank() > 0 ? 1 : 0);
  for (int k = 1; k <= K + 1; ++k) {
    ChainBasis here = make_basis(k);
    s.ranks.push_back(here.rank());
    // rank d_k can not exceed dim ker d_{k-1}; stop eliminating once it is reached
    const Index kernel = s.ranks[k - 1] - s.boundary_ranks[k - 1];
    Index r = 0;
    if (here.rank() > 0 && kernel > 0) r = rank(boundary_matrix(here, below).matrix, kernel);
    s.boundary_ranks.push_back(r);
    below = std::move(here);
  }
  for (int k = 0; k <= K; ++k) s.betti.push_back(s.ranks[k] - s.boundary_ranks[k] - s.boundary_ranks[k + 1]);
  return s;
}

}  // namespace

bool ChainComplexSummary::satisfies_morse_inequalities() const {
  for (std::size_t k = 0; k < betti.size(); ++k) {
    const Index prev = k == 0 ? 1 : ranks[k - 1];  // the augmentation has rank 1
    const Index next = k + 1 < ranks.size() ? ranks[k + 1] : 0;
    if (betti[k] < 0 || betti[k] > ranks[k] || betti[k] < -prev + ranks[k] - next) return false;
  }
  return true;
}

ChainComplexSummary path_betti(const Digraph& g, int K, Flavor flavor) {
  if (flavor != Flavor::nonregular && flavor != Flavor::regular)
    throw std::invalid_argument("path_betti needs flavor nonregular or regular");
  return summarize(flavor, K, [&](int k) { return omega_basis(g, k, flavor); });
}

ChainComplexSummary dflag_betti(const Digraph& g, int K) {
  return summarize(Flavor::dflag, K, [&](int k) { return dflag_basis(g, k); });
}

ChainComplexSummary clique_betti(const UMultigraph& u, int K) {
  return summarize(Flavor::clique, K, [&](int k) { return clique_basis(u, k); });
}

ChainComplexSummary betti(const Digraph& g, int K, Flavor flavor) {
  switch (flavor) {
    case Flavor::nonregular:
    case Flavor::regular: return path_betti(g, K, flavor);
    case Flavor::dflag: return dflag_betti(g, K);
    case Flavor::clique: return clique_betti(flat_symmetrization(g), K);
  }
  throw std::invalid_argument("unknown flavor");
}

Index betti1(const Digraph& g, Flavor flavor) {
  if (flavor == Flavor::clique) return clique_betti(flat_symmetrization(g), 1).betti[1];
  // dim ker d_1 = |E| - (n - components): skip rank d_1 entirely.
  const ChainBasis top = chain_basis(g, 2, flavor);
  const ChainBasis edges = chain_basis(g, 1, flavor);
  const auto cycles = static_cast<Index>(g.edge_count()) - g.vertex_count() +
                      static_cast<Index>(weak_components(g));
  if (cycles == 0 || top.rank() == 0) return cycles;
  return cycles - rank(boundary_matrix(top, edges).matrix, cycles);
}

ComparativeBetti1 comparative_betti1(const Digraph& g) {
  const UMultigraph flat = flat_symmetrization(g);
  ComparativeBetti1 out;
  out.flat_graph = static_cast<Index>(cycle_rank(flat));
  out.weak_multigraph = static_cast<Index>(cycle_rank(weak_symmetrization(g)));
  out.clique_flat = clique_betti(flat, 1).betti[1];
  out.dflag = betti1(g, Flavor::dflag);
  out.nonregular = betti1(g, Flavor::nonregular);
  out.regular = betti1(g, Flavor::regular);
  return out;
}

}  // namespace phom
