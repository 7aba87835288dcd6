#include "phom/experiment.hpp"

#include "reference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace phom {

namespace {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Work is claimed
// through an atomic counter; callers write results into slot i only.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<Index> sample_betti(const Digraph& g, Flavor flavor, int K) {
  if (K == 1) return {betti1(g, flavor)};
  const ChainComplexSummary s = betti(g, K, flavor);
  return {s.betti.begin() + 1, s.betti.end()};
}

void write_header(std::ostream& out, const GridConfig& cfg) {
  out << "# phom " << PHOM_VERSION << "\n"
      << "# master_seed=" << cfg.master_seed << " flavor=" << to_string(cfg.flavor) << " samples=" << cfg.samples
      << " n=" << cfg.n_min << ".." << cfg.n_max << "/" << cfg.n_step << " p=" << cfg.p_min << ".." << cfg.p_max
      << "x" << cfg.p_count << " max_degree=" << cfg.max_degree << "\n";
}

}  // namespace

std::vector<double> log_spaced(double a, double b, int count) {
  if (count < 1) throw std::invalid_argument("need at least one grid value");
  if (count == 1 || a == b) return std::vector<double>(static_cast<std::size_t>(count), a);
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("log spacing needs positive endpoints");
  std::vector<double> out;
  const double la = std::log(a), lb = std::log(b);
  for (int j = 0; j < count; ++j) out.push_back(std::exp(la + j * (lb - la) / (count - 1)));
  out.front() = a;
  out.back() = b;
  return out;
}

std::vector<int> GridConfig::n_values() const {
  if (n_min < 1 || n_max < n_min || n_step < 1) throw std::invalid_argument("invalid n range");
  std::vector<int> out;
  for (int n = n_min; n <= n_max; n += n_step) out.push_back(n);
  return out;
}

std::vector<double> GridConfig::p_values() const {
  if (!(p_min >= 0.0 && p_max <= 1.0 && p_min <= p_max)) throw std::invalid_argument("invalid p range");
  return log_spaced(p_min, p_max, p_count);
}

ExperimentSpec reference_experiment(int id) {
  for (const auto& row : detail::reference_constants().at("experiments")) {
    if (row.at("id").get<int>() != id) continue;
    ExperimentSpec e;
    e.id = id;
    e.flavor = *parse_flavor(row.at("homology").get<std::string>());
    e.samples = row.at("samples").get<int>();
    e.n_min = row.at("n_range").at(0).get<int>();
    e.n_max = row.at("n_range").at(1).get<int>();
    e.p_min = row.at("p_range").at(0).get<double>();
    e.p_max = row.at("p_range").at(1).get<double>();
    return e;
  }
  throw std::invalid_argument("no reference experiment " + std::to_string(id));
}

McOptions reference_community_options() {
  const auto& node = detail::reference_constants().at("community_test");
  McOptions opt;
  opt.null_samples = node.at("null_samples").get<int>();
  opt.alpha = node.at("alpha").get<double>();
  return opt;
}

double estimate_grid_cost(const GridConfig& cfg) {
  double cost = 0.0;
  for (const int n : cfg.n_values())
    for (const double p : cfg.p_values())
      cost += std::pow(double(n), cfg.max_degree + 2) * std::pow(p, cfg.max_degree + 1);
  return cost * cfg.samples;
}

double GridCell::frac_zero() const {
  if (samples.empty()) return 0.0;
  const auto zeros = std::count_if(samples.begin(), samples.end(), [](const auto& s) { return s.beta1() == 0; });
  return double(zeros) / double(samples.size());
}

double GridCell::mean_beta1() const {
  if (samples.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : samples) total += double(s.beta1());
  return total / double(samples.size());
}

double GridCell::normalized_mean() const {
  const double scale = double(n) * (n - 1) * p;
  return scale > 0.0 ? mean_beta1() / scale : 0.0;
}

GridResult run_grid(const GridConfig& cfg, const GridHooks& hooks) {
  if (cfg.samples < 1) throw std::invalid_argument("samples must be positive");
  if (cfg.max_degree < 1) throw std::invalid_argument("max degree must be at least 1");
  if (cfg.check_regular && cfg.flavor != Flavor::nonregular)
    throw std::invalid_argument("the regular check compares against the nonregular flavor");
  const auto ns = cfg.n_values();
  const auto ps = cfg.p_values();
  if (hooks.warn) {
    const double cost = estimate_grid_cost(cfg);
    if (cost > cfg.cost_budget) {
      std::ostringstream msg;
      msg << "estimated cost " << cost << " exceeds budget " << cfg.cost_budget << "; this may take a long time";
      hooks.warn(msg.str());
    }
  }

  GridResult result;
  result.config = cfg;
  for (const int n : ns)
    for (std::size_t j = 0; j < ps.size(); ++j) {
      GridCell cell;
      cell.n = n;
      cell.p_index = static_cast<int>(j);
      cell.p = ps[j];
      cell.samples.resize(static_cast<std::size_t>(cfg.samples));
      result.cells.push_back(std::move(cell));
    }

  const std::size_t per_cell = static_cast<std::size_t>(cfg.samples);
  const std::size_t total = result.cells.size() * per_cell;
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  // Largest cells first so the tail of the schedule is short.
  std::vector<std::size_t> order(result.cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = result.cells[a];
    const auto& y = result.cells[b];
    return double(x.n) * x.n * x.n * x.p * x.p > double(y.n) * y.n * y.n * y.p * y.p;
  });

  parallel_for(total, cfg.jobs, [&](std::size_t task) {
    GridCell& cell = result.cells[order[task / per_cell]];
    const std::size_t s = task % per_cell;
    GridSample& out = cell.samples[s];
    out.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(cell.n),
                           static_cast<std::uint64_t>(cell.p_index), static_cast<std::uint64_t>(s));
    const Digraph g = sample_er({cell.n, cell.p, out.seed});
    out.betti = sample_betti(g, cfg.flavor, cfg.max_degree);
    if (cfg.check_regular) {
      out.beta1_regular = betti1(g, Flavor::regular);
      if (*out.beta1_regular > out.beta1())
        throw std::logic_error("regular beta_1 exceeds nonregular beta_1 for seed " + std::to_string(out.seed));
    }
    const std::size_t finished = ++done;
    if (hooks.progress) {
      std::lock_guard lock(progress_mutex);
      hooks.progress(finished, total);
    }
  });
  return result;
}

void write_grid_samples_csv(std::ostream& out, const GridResult& grid) {
  write_header(out, grid.config);
  out << "n,p,sample_index,seed,beta1";
  for (int k = 2; k <= grid.config.max_degree; ++k) out << ",beta" << k;
  if (grid.config.check_regular) out << ",beta1_regular";
  out << "\n";
  const auto old_precision = out.precision(17);
  for (const auto& cell : grid.cells)
    for (std::size_t s = 0; s < cell.samples.size(); ++s) {
      const auto& x = cell.samples[s];
      out << cell.n << ',' << cell.p << ',' << s << ',' << x.seed;
      for (const Index b : x.betti) out << ',' << b;
      if (x.beta1_regular) out << ',' << *x.beta1_regular;
      out << "\n";
    }
  out.precision(old_precision);
}

void write_grid_summary_csv(std::ostream& out, const GridResult& grid) {
  write_header(out, grid.config);
  out << "n,p,frac_zero,mean_beta1,normalized_mean\n";
  const auto old_precision = out.precision(17);
  for (const auto& cell : grid.cells)
    out << cell.n << ',' << cell.p << ',' << cell.frac_zero() << ',' << cell.mean_beta1() << ','
        << cell.normalized_mean() << "\n";
  out.precision(old_precision);
}

Boundaries extract_boundaries(const GridResult& grid, double threshold) {
  std::map<int, std::vector<const GridCell*>> by_n;
  for (const auto& c : grid.cells) by_n[c.n].push_back(&c);
  Boundaries out;
  for (auto& [n, cells] : by_n) {
    if (cells.size() < 2) throw std::invalid_argument("boundary extraction needs two p values per n");
    std::sort(cells.begin(), cells.end(), [](const auto* a, const auto* b) { return a->p_index < b->p_index; });
    std::size_t prefix = 0;
    while (prefix < cells.size() && cells[prefix]->frac_zero() >= threshold) ++prefix;
    if (prefix > 0) out.lower.push_back({n, cells[prefix - 1]->p});
    std::size_t suffix = cells.size();
    while (suffix > 0 && cells[suffix - 1]->frac_zero() >= threshold) --suffix;
    if (suffix < cells.size()) out.upper.push_back({n, cells[suffix]->p});
  }
  return out;
}

BoundaryFit fit_power_law(std::span<const BoundaryPoint> points) {
  if (points.size() < 2) throw std::invalid_argument("a power-law fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, p] : points) {
    if (n <= 0 || !(p > 0.0)) throw std::invalid_argument("power-law fit needs positive coordinates");
    const double x = std::log(double(n)), y = std::log(p);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = double(points.size());
  const double denom = m * sxx - sx * sx;
  if (denom <= 0.0) throw std::invalid_argument("power-law fit needs at least two distinct n");
  BoundaryFit fit;
  fit.points.assign(points.begin(), points.end());
  fit.gamma = (m * sxy - sx * sy) / denom;
  const double log_a = (sy - fit.gamma * sx) / m;
  fit.A = std::exp(log_a);
  for (const auto& [n, p] : points) {
    const double r = std::log(p) - log_a - fit.gamma * std::log(double(n));
    fit.rss += r * r;
  }
  return fit;
}

int per_test_threshold(int null_samples, double alpha, int comparisons) {
  if (null_samples < 1 || comparisons < 1) throw std::invalid_argument("need positive sample and comparison counts");
  return static_cast<int>(std::floor(alpha * (null_samples + 1) / comparisons + 1e-9));
}

McTestResult mc_significance_test(const Digraph& observed, const McOptions& opt) {
  if (observed.vertex_count() < 2) throw std::invalid_argument("observed graph needs at least two vertices");
  if (opt.null_samples < 1) throw std::invalid_argument("need at least one null sample");
  McTestResult r;
  r.nodes = observed.vertex_count();
  r.density = observed.density();
  r.observed = betti1(observed, opt.flavor);
  r.null_samples = opt.null_samples;
  r.policy = opt.ties;
  r.comparisons = opt.comparisons;
  r.alpha = opt.alpha;
  r.seed = opt.seed;
  r.threshold = per_test_threshold(opt.null_samples, opt.alpha, opt.comparisons);

  std::vector<Index> null(static_cast<std::size_t>(opt.null_samples));
  parallel_for(null.size(), opt.jobs, [&](std::size_t i) {
    null[i] = betti1(sample_er({r.nodes, r.density, derive_seed(opt.seed, i)}), opt.flavor);
  });
  int above = 0;
  for (const Index b : null) {
    if (b > r.observed) ++above;
    if (b == r.observed) ++r.ties;
  }
  r.conservative_rank = 1 + above + r.ties;
  if (opt.ties == TiePolicy::conservative) {
    r.rank = r.conservative_rank;
  } else {
    // Uniform place among the ties + 1 slots, drawn from a stream separate from the samples.
    const double u = to_unit_interval(derive_seed(opt.seed, 0x7469657300000000ULL));
    r.rank = 1 + above + std::min(r.ties, static_cast<int>(u * (r.ties + 1)));
  }
  r.significant = r.rank <= r.threshold;
  return r;
}

std::vector<McTestResult> community_analysis(const ParsedGraph& parsed, McOptions opt,
                                             const std::function<void(const std::string&)>& notice) {
  if (!parsed.labels) throw std::invalid_argument("community analysis needs vertex labels");
  std::map<std::string, std::vector<Vertex>> members;
  for (std::size_t v = 0; v < parsed.labels->size(); ++v)
    if (!(*parsed.labels)[v].empty()) members[(*parsed.labels)[v]].push_back(static_cast<Vertex>(v));

  std::vector<std::string> names;
  for (const auto& [name, vs] : members) names.push_back(name);
  const bool numeric = std::all_of(names.begin(), names.end(), [](const std::string& s) {
    return !s.empty() && s.size() < 18 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  });
  if (numeric)
    std::sort(names.begin(), names.end(), [](const auto& a, const auto& b) { return std::stoll(a) < std::stoll(b); });

  const std::uint64_t base_seed = opt.seed;
  opt.comparisons = static_cast<int>(names.size());
  std::vector<McTestResult> out;
  for (std::size_t c = 0; c < names.size(); ++c) {
    const auto& vs = members[names[c]];
    if (vs.size() < 2) {
      if (notice) notice("community " + names[c] + " has " + std::to_string(vs.size()) + " vertex; skipped");
      continue;
    }
    opt.seed = derive_seed(base_seed, c);
    McTestResult r = mc_significance_test(parsed.graph.induced_subgraph(vs), opt);
    r.community = names[c];
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<NormalitySummary> normality_summary(std::span<const double> samples) {
  if (samples.size() < 8) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo == *hi) return std::nullopt;
  const double n = double(samples.size());
  double mean = 0.0;
  for (const double x : samples) mean += x;
  mean /= n;
  double m2 = 0, m3 = 0, m4 = 0;
  for (const double x : samples) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  NormalitySummary s;
  s.skewness = m3 / std::pow(m2, 1.5);
  s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  s.jarque_bera = n / 6.0 * (s.skewness * s.skewness + s.excess_kurtosis * s.excess_kurtosis / 4.0);
  s.p_value = std::exp(-s.jarque_bera / 2.0);
  return s;
}

}  // namespace phom
