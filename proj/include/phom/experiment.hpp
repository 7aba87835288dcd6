#pragma once

// Seeded random-graph experiments: (n, p) grids of beta_1 samples, boundary
// extraction and power-law fits, and the community Monte Carlo test.

#include "phom/homology.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace phom {

/// count values from a to b, equally spaced in log p.
std::vector<double> log_spaced(double a, double b, int count);

struct GridConfig {
  Flavor flavor = Flavor::nonregular;
  int samples = 20;
  int n_min = 20;
  int n_max = 60;
  int n_step = 5;
  double p_min = 1e-3;
  double p_max = 0.1;
  int p_count = 50;
  std::uint64_t master_seed = 0;
  int max_degree = 1;
  /// Also compute regular beta_1 and fail if it exceeds the nonregular one.
  bool check_regular = false;
  unsigned jobs = 1;
  /// Rough budget for estimate_grid_cost; run_grid warns above it.
  double cost_budget = 2e8;

  std::vector<int> n_values() const;
  std::vector<double> p_values() const;
  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

/// One row of the reference experiment table (ids 1-4).
struct ExperimentSpec {
  int id = 0;
  Flavor flavor = Flavor::nonregular;
  int samples = 0;
  int n_min = 0;
  int n_max = 0;
  double p_min = 0.0;
  double p_max = 0.0;
};

ExperimentSpec reference_experiment(int id);
/// Expected number of allowed paths touched when building the top chain
/// group, summed over every sample. A crude proxy for running time.
double estimate_grid_cost(const GridConfig& cfg);

struct GridSample {
  std::uint64_t seed = 0;
  std::vector<Index> betti;  ///< beta_1 .. beta_K
  std::optional<Index> beta1_regular;

  Index beta1() const { return betti.front(); }
  friend bool operator==(const GridSample&, const GridSample&) = default;
};

struct GridCell {
  int n = 0;
  int p_index = 0;
  double p = 0.0;
  std::vector<GridSample> samples;

  double frac_zero() const;
  double mean_beta1() const;
  /// mean beta_1 / (n (n-1) p); zero when p = 0.
  double normalized_mean() const;
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

struct GridResult {
  GridConfig config;
  std::vector<GridCell> cells;  ///< n-major, then p index
  friend bool operator==(const GridResult&, const GridResult&) = default;
};

struct GridHooks {
  std::function<void(std::size_t done, std::size_t total)> progress;
  std::function<void(const std::string&)> warn;
};

/// Sample seeds are derive_seed(master, n, p_index, sample_index), so results
/// do not depend on jobs or scheduling. Throws std::logic_error if
/// check_regular finds beta_1^reg > beta_1.
GridResult run_grid(const GridConfig& cfg, const GridHooks& hooks = {});

/// Per-sample rows: n,p,sample_index,seed,beta1[,beta2..][,beta1_regular].
void write_grid_samples_csv(std::ostream& out, const GridResult& grid);
/// Per-cell rows: n,p,frac_zero,mean_beta1,normalized_mean.
void write_grid_summary_csv(std::ostream& out, const GridResult& grid);

struct BoundaryPoint {
  int n = 0;
  double p = 0.0;
  friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
};

struct Boundaries {
  std::vector<BoundaryPoint> lower;  ///< largest p whose prefix all has frac_zero >= threshold
  std::vector<BoundaryPoint> upper;  ///< smallest p whose suffix all does
  friend bool operator==(const Boundaries&, const Boundaries&) = default;
};

Boundaries extract_boundaries(const GridResult& grid, double threshold = 0.95);

struct BoundaryFit {
  std::vector<BoundaryPoint> points;
  double A = 0.0;
  double gamma = 0.0;
  double rss = 0.0;  ///< in log-log space
  friend bool operator==(const BoundaryFit&, const BoundaryFit&) = default;
};

/// Least squares of log p on log n. Needs two distinct n and positive coordinates.
BoundaryFit fit_power_law(std::span<const BoundaryPoint> points);

/// How a tie between the observed value and null values is ranked.
enum class TiePolicy {
  conservative,  ///< every tied null sample ranks above the observation
  randomized,    ///< the observation takes a uniformly random place among its ties
};

struct McTestResult {
  std::string community;
  int nodes = 0;
  double density = 0.0;
  Index observed = 0;
  int null_samples = 0;
  TiePolicy policy = TiePolicy::conservative;
  int rank = 0;               ///< 1 + #(null > observed) + place among ties
  int conservative_rank = 0;  ///< 1 + #(null >= observed)
  int ties = 0;
  int comparisons = 1;
  double alpha = 0.05;
  int threshold = 0;
  bool significant = false;
  std::uint64_t seed = 0;
  friend bool operator==(const McTestResult&, const McTestResult&) = default;
};

/// floor(alpha (N + 1) / k), guarded against rounding just below an integer.
int per_test_threshold(int null_samples, double alpha, int comparisons);

struct McOptions {
  int null_samples = 4199;
  double alpha = 0.05;
  int comparisons = 1;
  std::uint64_t seed = 0;
  TiePolicy ties = TiePolicy::conservative;
  Flavor flavor = Flavor::nonregular;
  unsigned jobs = 1;
};

/// Null sample count and significance level of the reference community test.
McOptions reference_community_options();

/// Ranks beta_1 of `observed` among beta_1 of null samples from G(n, p) with
/// matched n and density. Null sample i uses seed derive_seed(seed, i).
McTestResult mc_significance_test(const Digraph& observed, const McOptions& opt);

/// One test per labelled community, with comparisons set to the number of
/// distinct labels. Communities on fewer than two vertices are skipped and
/// reported through `notice`. Community c (in sorted label order) uses seed
/// derive_seed(seed, c).
std::vector<McTestResult> community_analysis(const ParsedGraph& parsed, McOptions opt,
                                             const std::function<void(const std::string&)>& notice = {});

struct NormalitySummary {
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double jarque_bera = 0.0;
  double p_value = 0.0;  ///< chi-squared, two degrees of freedom
  friend bool operator==(const NormalitySummary&, const NormalitySummary&) = default;
};

/// Empty for fewer than 8 samples or zero variance.
std::optional<NormalitySummary> normality_summary(std::span<const double> samples);

}  // namespace phom
