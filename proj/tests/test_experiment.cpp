#include "phom/experiment.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace phom;

namespace {

GridCell cell(int n, int p_index, double p, std::initializer_list<Index> betas) {
  GridCell c{n, p_index, p, {}};
  for (Index b : betas) c.samples.push_back({0, {b}, std::nullopt});
  return c;
}

GridResult synthetic(const std::vector<int>& ns, const std::vector<double>& ps, auto&& frac_zero_of) {
  GridResult g;
  for (int n : ns)
    for (std::size_t j = 0; j < ps.size(); ++j) {
      GridCell c{n, int(j), ps[j], {}};
      const int zeros = int(std::round(20 * frac_zero_of(n, ps[j])));
      for (int s = 0; s < 20; ++s) c.samples.push_back({0, {s < zeros ? 0 : 1}, std::nullopt});
      g.cells.push_back(std::move(c));
    }
  return g;
}

GridConfig small_config() {
  GridConfig cfg;
  cfg.samples = 4;
  cfg.n_min = 8;
  cfg.n_max = 16;
  cfg.n_step = 4;
  cfg.p_min = 0.02;
  cfg.p_max = 0.4;
  cfg.p_count = 6;
  cfg.master_seed = 12345;
  cfg.check_regular = true;
  return cfg;
}

}  // namespace

TEST_CASE("log spacing") {
  const auto ps = log_spaced(1e-4, 0.15, 50);
  REQUIRE(ps.size() == 50);
  for (int j = 0; j < 50; ++j)
    CHECK(ps[j] == doctest::Approx(std::exp(std::log(1e-4) + j * (std::log(0.15) - std::log(1e-4)) / 49)));
  CHECK(ps.front() == 1e-4);
  CHECK(ps.back() == 0.15);
  CHECK_THROWS_AS(log_spaced(0, 0.1, 5), std::invalid_argument);
}

TEST_CASE("grid configuration") {
  GridConfig cfg;
  CHECK(cfg.n_values() == std::vector<int>{20, 25, 30, 35, 40, 45, 50, 55, 60});
  CHECK(cfg.p_values().size() == 50);
  const auto e1 = reference_experiment(1);
  CHECK(e1.samples == 100);
  CHECK(e1.n_max == 150);
  CHECK(e1.p_min == 1e-4);
  CHECK(reference_experiment(4).flavor == Flavor::dflag);
  CHECK_THROWS(reference_experiment(9));
  CHECK(reference_community_options().null_samples == 4199);
}

TEST_CASE("a grid at p = 0 has no cycles") {
  GridConfig cfg = small_config();
  cfg.p_min = cfg.p_max = 0;
  const auto g = run_grid(cfg);
  CHECK(g.cells.size() == 3 * 6);
  for (const auto& c : g.cells) {
    CHECK(c.frac_zero() == 1.0);
    CHECK(c.mean_beta1() == 0.0);
    CHECK(c.normalized_mean() == 0.0);
    CHECK(c.samples.size() == 4);
  }
}

TEST_CASE("grids are reproducible and independent of the job count") {
  GridConfig cfg = small_config();
  const auto a = run_grid(cfg);
  cfg.jobs = 3;
  const auto b = run_grid(cfg);
  cfg.jobs = 1;
  CHECK(a.cells == b.cells);
  std::ostringstream sa, sb, ca, cb;
  write_grid_samples_csv(sa, a);
  write_grid_samples_csv(sb, b);
  write_grid_summary_csv(ca, a);
  write_grid_summary_csv(cb, b);
  CHECK(sa.str() == sb.str());
  CHECK(ca.str() == cb.str());
  for (const auto& c : a.cells)
    for (std::size_t s = 0; s < c.samples.size(); ++s) {
      CHECK(c.samples[s].seed == derive_seed(cfg.master_seed, std::uint64_t(c.n), std::uint64_t(c.p_index), s));
      REQUIRE(c.samples[s].beta1_regular.has_value());
      CHECK(*c.samples[s].beta1_regular <= c.samples[s].beta1());
    }
  cfg.master_seed = 999;
  CHECK_FALSE(run_grid(cfg).cells == a.cells);
}

TEST_CASE("grid files carry version and seed") {
  const auto g = run_grid(small_config());
  std::ostringstream s;
  write_grid_samples_csv(s, g);
  std::istringstream in(s.str());
  std::string l1, l2, l3;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  CHECK(l1 == "# phom " PHOM_VERSION);
  CHECK(l2.rfind("# master_seed=12345 ", 0) == 0);
  CHECK(l3 == "n,p,sample_index,seed,beta1,beta1_regular");
  std::ostringstream t;
  write_grid_summary_csv(t, g);
  CHECK(t.str().find("n,p,frac_zero,mean_beta1,normalized_mean\n") != std::string::npos);
}

TEST_CASE("grid guards") {
  GridConfig cfg = small_config();
  cfg.cost_budget = 1;
  std::vector<std::string> warnings;
  std::size_t last_done = 0, total = 0;
  run_grid(cfg, {[&](std::size_t d, std::size_t t) { last_done = d, total = t; },
                 [&](const std::string& w) { warnings.push_back(w); }});
  CHECK(warnings.size() == 1);
  CHECK(last_done == total);
  CHECK(total > 0);
  cfg.flavor = Flavor::dflag;
  CHECK_THROWS_AS(run_grid(cfg), std::invalid_argument);
}

TEST_CASE("the interim region is mostly cyclic") {
  GridConfig cfg;
  cfg.n_min = 20;
  cfg.n_max = 30;
  cfg.p_min = 1e-4;
  cfg.p_max = 0.15;
  cfg.p_count = 20;
  cfg.master_seed = 7;
  const auto g = run_grid(cfg);
  for (int n : {20, 25, 30}) {
    double lowest = 1;
    for (const auto& c : g.cells)
      if (c.n == n) lowest = std::min(lowest, c.frac_zero());
    CHECK(lowest <= 0.1);
  }
}

TEST_CASE("boundary extraction fixtures") {
  const std::vector<double> ps = log_spaced(0.01, 0.5, 12);
  SUBCASE("all-zero grid") {
    const auto b = extract_boundaries(synthetic({10, 20}, ps, [](int, double) { return 1.0; }));
    CHECK(b.lower == std::vector<BoundaryPoint>{{10, ps.back()}, {20, ps.back()}});
    CHECK(b.upper == std::vector<BoundaryPoint>{{10, ps.front()}, {20, ps.front()}});
  }
  SUBCASE("never zero") {
    const auto b = extract_boundaries(synthetic({10, 20}, ps, [](int, double) { return 0.0; }));
    CHECK(b.lower.empty());
    CHECK(b.upper.empty());
  }
  SUBCASE("step at 1/n") {
    const auto b = extract_boundaries(synthetic({10, 20, 40}, ps, [](int n, double p) { return p <= 1.0 / n ? 1.0 : 0.0; }));
    REQUIRE(b.lower.size() == 3);
    for (const auto& [n, p] : b.lower) {
      double expected = 0;
      for (double q : ps)
        if (q <= 1.0 / n) expected = q;
      CHECK(p == expected);
    }
    CHECK(b.upper.empty());
  }
  SUBCASE("threshold is inclusive and prefixes must be unbroken") {
    GridResult g;
    g.cells = {cell(5, 0, 0.1, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}),
               cell(5, 1, 0.2, {1}), cell(5, 2, 0.3, {0}), cell(5, 3, 0.4, {0})};
    const auto b = extract_boundaries(g);
    CHECK(b.lower == std::vector<BoundaryPoint>{{5, 0.1}});
    CHECK(b.upper == std::vector<BoundaryPoint>{{5, 0.3}});
    CHECK(b.lower[0].p <= b.upper[0].p);
  }
  SUBCASE("one p value is rejected") {
    GridResult g;
    g.cells = {cell(5, 0, 0.1, {0})};
    CHECK_THROWS_AS(extract_boundaries(g), std::invalid_argument);
  }
}

TEST_CASE("power-law fit") {
  std::vector<BoundaryPoint> pts;
  for (int n : {20, 40, 80, 160}) pts.push_back({n, 4.0 / n});
  const auto f = fit_power_law(pts);
  CHECK(f.A == doctest::Approx(4));
  CHECK(f.gamma == doctest::Approx(-1));
  CHECK(f.rss == doctest::Approx(0).epsilon(1e-20));
  CHECK(f.points == pts);

  const std::vector<BoundaryPoint> two{{10, 0.1}, {100, 0.01}};
  CHECK(fit_power_law(two).gamma == doctest::Approx(-1));

  std::mt19937_64 rng(3);
  std::vector<BoundaryPoint> noisy, scaled;
  for (int n = 20; n <= 60; n += 5) {
    const double p = 0.3 * std::pow(n, -0.7) * std::exp(0.1 * (double(rng() % 100) / 100 - 0.5));
    noisy.push_back({n, p});
    scaled.push_back({n, 2.5 * p});
  }
  const auto a = fit_power_law(noisy), b = fit_power_law(scaled);
  CHECK(b.gamma == doctest::Approx(a.gamma));
  CHECK(b.A == doctest::Approx(2.5 * a.A));
  CHECK(b.rss == doctest::Approx(a.rss));

  CHECK_THROWS_AS(fit_power_law(std::vector<BoundaryPoint>{{10, 0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_power_law(std::vector<BoundaryPoint>{{10, 0.1}, {20, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_power_law(std::vector<BoundaryPoint>{{10, 0.1}, {10, 0.2}}), std::invalid_argument);
}

TEST_CASE("Bonferroni thresholds") {
  CHECK(per_test_threshold(4199, 0.05, 42) == 5);
  CHECK(per_test_threshold(4199, 0.05, 1) == 210);
  CHECK(per_test_threshold(199, 0.05, 1) == 10);
  CHECK(per_test_threshold(99, 0.01, 1) == 1);
}

TEST_CASE("an acyclic observation is never significant") {
  const Digraph tree(8, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}, {6, 7}});
  McOptions opt;
  opt.null_samples = 99;
  opt.seed = 4;
  const auto r = mc_significance_test(tree, opt);
  CHECK(r.observed == 0);
  CHECK(r.rank == 100);
  CHECK(r.conservative_rank == 100);
  CHECK_FALSE(r.significant);
  CHECK(r.threshold == 5);
  CHECK(r.nodes == 8);
  CHECK(r.density == doctest::Approx(7.0 / 56));
}

TEST_CASE("Monte Carlo ranks") {
  const Digraph g = sample_er({10, 0.2, 77});
  for (TiePolicy t : {TiePolicy::conservative, TiePolicy::randomized}) {
    McOptions opt;
    opt.null_samples = 49;
    opt.seed = 21;
    opt.ties = t;
    const auto r = mc_significance_test(g, opt);
    CHECK(r.rank >= 1);
    CHECK(r.rank <= 50);
    CHECK(r.rank <= r.conservative_rank);
    CHECK(r.conservative_rank - r.rank <= r.ties);
    CHECK(r.significant == (r.rank <= r.threshold));
    if (t == TiePolicy::conservative) CHECK(r.rank == r.conservative_rank);
    opt.jobs = 4;
    CHECK(mc_significance_test(g, opt) == r);
  }
}

TEST_CASE("randomized ranks are calibrated under the null") {
  McOptions opt;
  opt.null_samples = 19;
  opt.ties = TiePolicy::randomized;
  const int reps = 400;
  int hits = 0;
  for (int i = 0; i < reps; ++i) {
    opt.seed = derive_seed(2718, i);
    const Digraph g = sample_er({7, 0.4, derive_seed(3141, i)});
    hits += mc_significance_test(g, opt).rank <= 2;
  }
  const double expected = 2.0 / 20, sigma = std::sqrt(expected * (1 - expected) / reps);
  CHECK(std::abs(double(hits) / reps - expected) <= 3 * sigma);
}

TEST_CASE("community analysis finds a planted cycle-rich community") {
  // Community 1: twelve disjoint double edges. Community 2: a directed path.
  std::ostringstream edges, labels;
  for (int t = 0; t < 12; ++t) edges << 2 * t << ' ' << 2 * t + 1 << "\n" << 2 * t + 1 << ' ' << 2 * t << "\n";
  for (int v = 24; v < 47; ++v) edges << v << ' ' << v + 1 << "\n";
  for (int v = 0; v < 48; ++v) labels << v << ' ' << (v < 24 ? 1 : 2) << "\n";
  std::istringstream ein(edges.str()), lin(labels.str());
  const auto parsed = parse_edge_list(ein, &lin);
  McOptions opt;
  opt.null_samples = 199;
  opt.seed = 11;
  const auto res = community_analysis(parsed, opt);
  REQUIRE(res.size() == 2);
  CHECK(res[0].community == "1");
  CHECK(res[0].observed == 12);
  CHECK(res[0].comparisons == 2);
  CHECK(res[0].threshold == 5);
  CAPTURE(res[0].rank);
  CHECK(res[0].significant);
  CHECK(res[1].community == "2");
  CHECK(res[1].observed == 0);
  CHECK_FALSE(res[1].significant);
  CHECK(res[0].seed == derive_seed(11, 0));
}

TEST_CASE("community labels sort numerically and singletons are skipped") {
  std::istringstream ein("0 1\n1 2\n2 3\n"), lin("0 10\n1 9\n2 100\n3 2\n");
  const auto parsed = parse_edge_list(ein, &lin);
  std::vector<std::string> notices;
  McOptions opt;
  opt.null_samples = 9;
  CHECK(community_analysis(parsed, opt, [&](const std::string& s) { notices.push_back(s); }).empty());
  REQUIRE(notices.size() == 4);
  CHECK(notices[0].find("community 2 ") == 0);
  CHECK(notices[3].find("community 100 ") == 0);
}

TEST_CASE("normality summary") {
  CHECK_FALSE(normality_summary(std::vector<double>(100, 3.0)).has_value());
  CHECK_FALSE(normality_summary(std::vector<double>{1, 2, 3}).has_value());
  std::mt19937_64 rng(1);
  int passes = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::normal_distribution<double> z(5, 2);
    std::vector<double> x(1000);
    for (auto& v : x) v = z(rng);
    passes += normality_summary(x)->p_value > 0.01;
  }
  CHECK(passes >= 95);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> x(1000);
  for (auto& v : x) v = e(rng);
  const auto s = normality_summary(x);
  REQUIRE(s.has_value());
  CHECK(s->p_value < 0.01);
  CHECK(s->skewness > 1);
}
