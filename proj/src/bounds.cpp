#include "phom/bounds.hpp"

#include "reference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace phom {

namespace {

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double choose(double n, double k) { return k < 0 || k > n ? 0.0 : std::exp(log_choose(n, k)); }

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
}

void require_bound_flavor(Flavor f) {
  if (f == Flavor::clique) throw std::invalid_argument("bounds are defined for nonregular, regular and dflag");
}

BoundResult finish(BoundKind kind, Flavor flavor, int n, double p, double raw) {
  return {kind, flavor, n, p, std::clamp(raw, 0.0, 1.0), raw};
}

// Terms for directed 2-cycles and 3-cycles without a cycle centre.
double short_cycle_terms(int n, double p, Flavor flavor) {
  double t = 2.0 * choose(n, 3) * std::pow(p, 3) * std::pow(1.0 - std::pow(p, 3), 2.0 * n - 6);
  if (flavor != Flavor::regular) t += choose(n, 2) * p * p * std::pow(1.0 - p * p, 2.0 * n - 4);
  return t;
}

}  // namespace

std::string_view to_string(MotifHomology h) { return h == MotifHomology::path ? "path" : "dflag"; }

std::optional<MotifHomology> parse_motif_homology(std::string_view name) {
  if (name == "path") return MotifHomology::path;
  if (name == "dflag") return MotifHomology::dflag;
  return std::nullopt;
}

MotifClassTables motif_class_tables(MotifHomology h) {
  const MotifTables& t = motif_tables(h);
  MotifClassTables out;
  out.homology = h;
  for (int m = 0; m < 4; ++m) {
    out.c[m] = static_cast<int>(std::count(t.shortcut[m].begin(), t.shortcut[m].end(), true));
    for (unsigned J = 0; J < 256; ++J)
      if (t.gamma[m][J]) ++out.Q[m][std::popcount(J)];
  }
  return out;
}

MotifClassTables reference_motif_class_tables(MotifHomology h) {
  const auto& node = detail::reference_constants().at("motif_class_tables").at(std::string(to_string(h)));
  MotifClassTables out;
  out.homology = h;
  out.c = node.at("c").get<std::array<int, 4>>();
  out.Q = node.at("Q").get<std::array<std::array<int, 9>, 4>>();
  return out;
}

double expected_ranks(int n, double p, Flavor flavor, int k) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  require_probability(p);
  const double N = n;
  switch (flavor) {
    case Flavor::nonregular:
    case Flavor::regular:
      if (k == 0) return N;
      if (k == 1) return N * (N - 1) * p;
      if (k == 2) {
        const double q = 1.0 - p * p;
        double e = N * (N - 1) * (N - 1) * p * p - N * (N - 1) * (1 - p) * (1 - std::pow(q, N - 2));
        if (flavor == Flavor::nonregular) e -= N * (1 - std::pow(q, N - 1));
        return e;
      }
      break;
    case Flavor::dflag:
      if (k < 0) break;
      if (k + 1 > n) return 0.0;
      if (k == 0) return N;
      if (p == 0.0) return 0.0;
      // C(n, k+1) (k+1)! = n! / (n-k-1)!
      return std::exp(std::lgamma(N + 1) - std::lgamma(N - k) + 0.5 * k * (k + 1) * std::log(p));
    case Flavor::clique: break;
  }
  throw std::invalid_argument("unsupported flavor and degree for expected_ranks");
}

std::string_view to_string(BoundKind k) {
  switch (k) {
    case BoundKind::lower_region: return "lower-region";
    case BoundKind::second_moment: return "second-moment";
    case BoundKind::high_density: return "high-density";
    case BoundKind::high_density_naive: return "high-density-naive";
  }
  return "unknown";
}

std::optional<BoundKind> parse_bound_kind(std::string_view name) {
  for (const BoundKind k : {BoundKind::lower_region, BoundKind::second_moment, BoundKind::high_density,
                            BoundKind::high_density_naive})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

BoundResult bound_lower_region(int n, double p, Flavor flavor) {
  require_bound_flavor(flavor);
  require_probability(p);
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  double sum = 0.0;
  if (p > 0.0) {
    const int first = flavor == Flavor::regular ? 3 : 2;
    for (int L = first; L <= n; ++L)
      sum += std::exp(log_choose(n, L) + std::lgamma(L + 1.0) - std::log(2.0 * L) + L * std::log(2.0 * p));
  }
  return finish(BoundKind::lower_region, flavor, n, p, sum);
}

BoundResult bound_second_moment(int n, double p, Flavor flavor, SecondMomentNumerator numerator) {
  require_bound_flavor(flavor);
  require_probability(p);
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (p == 0.0) return finish(BoundKind::second_moment, flavor, n, p, 0.0);
  const double N = n;
  const double n1 = numerator == SecondMomentNumerator::expectation ? N * (N - 1) * p : N * (N - 1) * (1 - p);
  const double top = std::max(0.0, -N + n1 - expected_ranks(n, p, flavor, 2));
  const double second = N * (N - 1) * p * (1 - p) + N * N * (N - 1) * (N - 1) * p * p;
  return finish(BoundKind::second_moment, flavor, n, p, top * top / second);
}

BoundResult bound_high_density(int n, double p, Flavor flavor) {
  require_bound_flavor(flavor);
  require_probability(p);
  if (n < 4) throw std::invalid_argument("n must be at least 4");
  const MotifClassTables t = motif_class_tables(flavor == Flavor::dflag ? MotifHomology::dflag : MotifHomology::path);
  double classes = 0.0;
  for (int m = 0; m < 4; ++m) {
    double centred = 0.0;
    for (int l = 0; l <= 8; ++l) centred += t.Q[m][l] * std::pow(p, l) * std::pow(1 - p, 8 - l);
    classes += std::pow(p, 3) * std::pow(1 - p, t.c[m]) * std::pow(std::max(0.0, 1 - centred), n - 4.0);
  }
  const double paths = std::exp(std::lgamma(n + 1.0) - std::lgamma(n - 3.0)) * classes;
  return finish(BoundKind::high_density, flavor, n, p, paths + short_cycle_terms(n, p, flavor));
}

BoundResult bound_high_density_naive(int n, double p, Flavor flavor) {
  require_bound_flavor(flavor);
  require_probability(p);
  if (n < 4) throw std::invalid_argument("n must be at least 4");
  const double p3 = std::pow(p, 3);
  const double raw = 4.0 * std::pow(double(n), 4) * p3 * std::exp(-p3 * (n - 4)) + short_cycle_terms(n, p, flavor);
  return finish(BoundKind::high_density_naive, flavor, n, p, raw);
}

BoundResult evaluate_bound(BoundKind kind, int n, double p, Flavor flavor) {
  switch (kind) {
    case BoundKind::lower_region: return bound_lower_region(n, p, flavor);
    case BoundKind::second_moment: return bound_second_moment(n, p, flavor);
    case BoundKind::high_density: return bound_high_density(n, p, flavor);
    case BoundKind::high_density_naive: return bound_high_density_naive(n, p, flavor);
  }
  throw std::invalid_argument("unknown bound kind");
}

namespace {

constexpr double kTolerance = 1e-6;

// Shrinks [lo, hi] around a change of `test`, keeping test(lo) and test(hi)
// as they were.
template <typename Test>
std::pair<double, double> bisect(double lo, double hi, Test&& test) {
  const bool lo_state = test(lo);
  while (hi - lo > kTolerance) {
    const double mid = 0.5 * (lo + hi);
    (test(mid) == lo_state ? lo : hi) = mid;
  }
  return {lo, hi};
}

}  // namespace

std::optional<double> threshold_p(int n, double alpha, BoundKind kind, Flavor flavor) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  auto exceeds = [&](double p) { return evaluate_bound(kind, n, p, flavor).raw > alpha; };
  switch (kind) {
    case BoundKind::lower_region: {
      constexpr double lo = 1e-6, hi = 1.0;
      if (exceeds(lo)) return std::nullopt;
      if (!exceeds(hi)) return hi;
      // The bound increases with p, so the crossing is unique.
      return bisect(lo, hi, exceeds).first;
    }
    case BoundKind::high_density:
    case BoundKind::high_density_naive: {
      // Not monotone on the whole bracket: locate the last grid point above
      // alpha, then refine between it and its right neighbour.
      constexpr double lo = 0.1, hi = 1.0;
      constexpr int steps = 900;
      int last_above = -1;
      for (int i = 0; i <= steps; ++i)
        if (exceeds(lo + (hi - lo) * i / steps)) last_above = i;
      if (last_above < 0 || last_above == steps) return std::nullopt;
      const double a = lo + (hi - lo) * last_above / steps;
      const double b = lo + (hi - lo) * (last_above + 1) / steps;
      return bisect(a, b, exceeds).second;
    }
    case BoundKind::second_moment: break;
  }
  throw std::invalid_argument("threshold_p is defined for the upper-bound kinds only");
}

}  // namespace phom
