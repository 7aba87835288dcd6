#pragma once

// Betti numbers of the chain complexes in path_complex.hpp.
//
// All homology here is reduced: degree 0 maps onto the augmentation, so
// beta_0 is the number of weak components minus one (and 0 for the empty
// graph). Coefficients are rational.

#include "phom/path_complex.hpp"

#include <string>
#include <vector>

namespace phom {

struct ChainComplexSummary {
  Flavor flavor = Flavor::nonregular;
  int max_degree = 0;
  std::vector<Index> ranks;           ///< n_0 .. n_{K+1}
  std::vector<Index> boundary_ranks;  ///< r_0 .. r_{K+1}
  std::vector<Index> betti;           ///< beta_0 .. beta_K

  /// -n_{k-1} + n_k - n_{k+1} <= beta_k <= n_k at every degree.
  bool satisfies_morse_inequalities() const;
  friend bool operator==(const ChainComplexSummary&, const ChainComplexSummary&) = default;
};

/// Path homology up to degree K (flavor nonregular or regular). Builds
/// Omega_{K+1} to get r_{K+1}.
ChainComplexSummary path_betti(const Digraph& g, int K, Flavor flavor = Flavor::nonregular);
ChainComplexSummary dflag_betti(const Digraph& g, int K);
ChainComplexSummary clique_betti(const UMultigraph& u, int K);
/// Dispatch on flavor; clique uses the flat symmetrization.
ChainComplexSummary betti(const Digraph& g, int K, Flavor flavor);

/// beta_1 alone; dim ker d_1 comes from the cycle rank, so only d_2 is reduced.
Index betti1(const Digraph& g, Flavor flavor);

struct ComparativeBetti1 {
  Index flat_graph = 0;
  Index weak_multigraph = 0;
  Index clique_flat = 0;
  Index dflag = 0;
  Index nonregular = 0;
  Index regular = 0;
  friend bool operator==(const ComparativeBetti1&, const ComparativeBetti1&) = default;
};

ComparativeBetti1 comparative_betti1(const Digraph& g);

}  // namespace phom
