#pragma once

// Closed-form expectations and probability bounds for beta_1 of G(n, p).

#include "phom/path_complex.hpp"
#include "phom/structure.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace phom {

/// Shortcut counts c_m and linking-set counts q_{m,l} for the four length-3
/// path classes.
struct MotifClassTables {
  MotifHomology homology = MotifHomology::path;
  std::array<int, 4> c{};
  std::array<std::array<int, 9>, 4> Q{};
  friend bool operator==(const MotifClassTables&, const MotifClassTables&) = default;
};

/// Exhaustive enumeration over sigma_m + e and sigma_m + J.
MotifClassTables motif_class_tables(MotifHomology h);
/// The published tables, read from data/reference_constants.json at build time.
MotifClassTables reference_motif_class_tables(MotifHomology h);

std::string_view to_string(MotifHomology h);
std::optional<MotifHomology> parse_motif_homology(std::string_view name);

/// E[rank] of the degree-k chain group. Path flavours support k = 0, 1, 2;
/// dflag any k >= 0. Throws std::invalid_argument otherwise.
double expected_ranks(int n, double p, Flavor flavor, int k);

enum class BoundKind {
  lower_region,        ///< upper bound on P(beta_1 > 0), small p
  second_moment,       ///< lower bound on P(beta_1 > 0)
  high_density,        ///< upper bound on P(beta_1 > 0), large p
  high_density_naive,  ///< cruder large-p bound with exp(-p^3 (n-4))
};

std::string_view to_string(BoundKind k);
std::optional<BoundKind> parse_bound_kind(std::string_view name);

struct BoundResult {
  BoundKind kind = BoundKind::lower_region;
  Flavor flavor = Flavor::nonregular;
  int n = 0;
  double p = 0.0;
  double value = 0.0;  ///< clamped to [0, 1]
  double raw = 0.0;
  friend bool operator==(const BoundResult&, const BoundResult&) = default;
};

/// Union bound over undirected cycles; sum starts at L = 3 for the regular flavour.
BoundResult bound_lower_region(int n, double p, Flavor flavor);

/// Which E[n_1] enters the numerator: the expectation n(n-1)p, or the
/// n(n-1)(1-p) that appears in the statement of the published bound.
enum class SecondMomentNumerator { expectation, printed };

/// max(0, E[-n_0 + n_1 - n_2])^2 / E[n_1^2]; zero at p = 0.
BoundResult bound_second_moment(int n, double p, Flavor flavor,
                                SecondMomentNumerator numerator = SecondMomentNumerator::expectation);

/// Needs n >= 4. nonregular and regular use the path tables (regular drops
/// the double-edge term), dflag its own tables.
BoundResult bound_high_density(int n, double p, Flavor flavor);
BoundResult bound_high_density_naive(int n, double p, Flavor flavor);

BoundResult evaluate_bound(BoundKind kind, int n, double p, Flavor flavor);

/// For lower_region: the largest p with bound <= alpha on all of (0, p].
/// For the high-density kinds: the smallest p in [0.1, 1] with bound <= alpha
/// on all of [p, 1]. Empty when the bound never crosses alpha inside the
/// bracket. second_moment is rejected.
std::optional<double> threshold_p(int n, double alpha, BoundKind kind, Flavor flavor);

}  // namespace phom
