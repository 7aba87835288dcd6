// phom: command-line front end.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 internal assertion.

#include "phom/bounds.hpp"
#include "phom/experiment.hpp"
#include "phom/homology.hpp"
#include "phom/report.hpp"
#include "phom/structure.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace phom;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { table, json };

unsigned default_jobs() {
  if (const char* env = std::getenv("PHOM_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

ParsedGraph load_graph(const std::string& path, const std::string& labels = {}) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ifstream label_stream;
  if (!labels.empty()) {
    label_stream.open(labels);
    if (!label_stream) throw DataError("cannot open '" + labels + "'");
  }
  try {
    ParsedGraph g = parse_edge_list(in, labels.empty() ? nullptr : &label_stream);
    if (g.graph.vertex_count() == 0) throw DataError(path + ": no vertices");
    if (g.dropped_self_loops > 0) std::cerr << "note: dropped " << g.dropped_self_loops << " self-loops\n";
    if (g.duplicate_edges > 0) std::cerr << "note: merged " << g.duplicate_edges << " duplicate edges\n";
    return g;
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  return out;
}

Flavor parse_bound_flavor(const std::string& name) {
  if (name == "path" || name == "nonregular") return Flavor::nonregular;
  if (name == "regular-path" || name == "regular") return Flavor::regular;
  if (name == "dflag") return Flavor::dflag;
  throw CLI::ValidationError("--homology", "expected path, regular-path or dflag");
}

void print_summary(const ChainComplexSummary& s) {
  std::cout << "flavor " << to_string(s.flavor) << "  max degree " << s.max_degree << "\n";
  std::cout << std::setw(3) << "k" << std::setw(12) << "n_k" << std::setw(12) << "r_k" << std::setw(8) << "betti"
            << "\n";
  for (std::size_t k = 0; k < s.ranks.size(); ++k) {
    std::cout << std::setw(3) << k << std::setw(12) << s.ranks[k] << std::setw(12) << s.boundary_ranks[k];
    if (k < s.betti.size()) std::cout << std::setw(8) << s.betti[k];
    std::cout << "\n";
  }
}

// Number of allowed (K+1)-paths: walks of that length.
double allowed_path_count(const Digraph& g, int length) {
  std::vector<double> walks(static_cast<std::size_t>(g.vertex_count()), 1.0);
  for (int step = 0; step < length; ++step) {
    std::vector<double> next(walks.size(), 0.0);
    for (const auto& [u, v] : g.edges()) next[v] += walks[u];
    walks = std::move(next);
  }
  double total = 0.0;
  for (const double w : walks) total += w;
  return total;
}

int run_betti(const std::string& input, const std::string& flavor, int K, Format format) {
  const ParsedGraph parsed = load_graph(input);
  const Digraph& g = parsed.graph;
  if (flavor == "all") {
    const ComparativeBetti1 b = comparative_betti1(g);
    if (format == Format::json) {
      std::cout << Json(b).dump() << "\n";
    } else {
      std::cout << "graph-flat " << b.flat_graph << "\ngraph-weak " << b.weak_multigraph << "\nclique-flat "
                << b.clique_flat << "\ndflag " << b.dflag << "\nnonregular " << b.nonregular << "\nregular "
                << b.regular << "\n";
    }
    return 0;
  }
  if (flavor == "graph-flat" || flavor == "graph-weak") {
    const auto b = cycle_rank(flavor == "graph-flat" ? flat_symmetrization(g) : weak_symmetrization(g));
    if (format == Format::json)
      std::cout << Json{{"flavor", flavor}, {"beta1", b}}.dump() << "\n";
    else
      std::cout << flavor << " beta1 " << b << "\n";
    return 0;
  }
  const Flavor f = flavor == "clique-flat" ? Flavor::clique : *parse_flavor(flavor);
  if (K > 4 || f == Flavor::nonregular || f == Flavor::regular) {
    const double cost = allowed_path_count(g, K + 1);
    if (K > 4 || cost > 1e6)
      std::cerr << "warning: beta_" << K << " needs degree " << K + 1 << " chains; the graph has " << cost
                << " allowed " << K + 1 << "-paths\n";
  }
  const ChainComplexSummary s = betti(g, K, f);
  if (!s.satisfies_morse_inequalities()) throw std::logic_error("Morse inequalities violated");
  if (format == Format::json)
    std::cout << Json(s).dump() << "\n";
  else
    print_summary(s);
  return 0;
}

int run_sample(int n, double p, std::uint64_t seed, const std::string& output, Format format) {
  const Digraph g = sample_er({n, p, seed});
  std::ostringstream text;
  if (format == Format::json) {
    Json edges = Json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    text << Json{{"n", n}, {"p", p}, {"seed", seed}, {"edges", edges}}.dump() << "\n";
  } else {
    text << "# G(n=" << n << ", p=" << p << ") seed=" << seed << "\n";
    write_edge_list(text, g);
  }
  if (output.empty()) {
    std::cout << text.str();
  } else {
    open_output(output) << text.str();
    std::cout << "seed " << seed << "\n";
  }
  return 0;
}

int run_qmatrix(const std::string& homology, Format format) {
  const MotifHomology h = *parse_motif_homology(homology);
  const MotifClassTables t = motif_class_tables(h);
  const MotifClassTables ref = reference_motif_class_tables(h);
  if (format == Format::json) {
    std::cout << Json(t).dump() << "\n";
  } else {
    std::cout << "c = (";
    for (int m = 0; m < 4; ++m) std::cout << (m ? "," : "") << t.c[m];
    std::cout << ")\nQ =\n";
    for (const auto& row : t.Q) {
      for (int l = 0; l < 9; ++l) std::cout << std::setw(4) << row[l];
      std::cout << "\n";
    }
  }
  if (t == ref) return 0;
  std::cerr << "self-check failed against the reference tables\n";
  for (int m = 0; m < 4; ++m) {
    if (t.c[m] != ref.c[m]) std::cerr << "  c[" << m << "] computed " << t.c[m] << " expected " << ref.c[m] << "\n";
    for (int l = 0; l < 9; ++l)
      if (t.Q[m][l] != ref.Q[m][l])
        std::cerr << "  Q[" << m << "][" << l << "] computed " << t.Q[m][l] << " expected " << ref.Q[m][l] << "\n";
  }
  return 3;
}

void print_mc(const McTestResult& r) {
  std::cout << std::left << std::setw(12) << (r.community.empty() ? "-" : r.community) << std::right << std::setw(6)
            << r.nodes << std::setw(11) << std::setprecision(4) << r.density << std::setw(8) << r.observed
            << std::setw(8) << r.rank << std::setw(8) << r.ties << std::setw(6) << r.threshold << "  "
            << (r.significant ? "yes" : "no") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path homology and directed flag complex tools for random digraphs"};
  app.set_version_flag("--version", std::string(PHOM_VERSION));
  app.require_subcommand(1);

  std::string format_name = "table";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  unsigned jobs = default_jobs();
  std::uint64_t seed = 0;

  // betti
  auto* betti_cmd = app.add_subcommand("betti", "Betti numbers of a digraph read from an edge list");
  std::string input, flavor = "nonregular";
  int K = 1;
  betti_cmd->add_option("--input,-i", input, "Edge list file")->required();
  betti_cmd->add_option("--flavor", flavor)
      ->check(CLI::IsMember({"nonregular", "regular", "dflag", "clique-flat", "graph-flat", "graph-weak", "all"}))
      ->capture_default_str();
  betti_cmd->add_option("--max-degree,-K", K, "Largest degree reported")->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Draw a directed Erdos-Renyi graph");
  int n = 0;
  double p = 0.0;
  std::string output;
  sample_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--p", p)->required()->check(CLI::Range(0.0, 1.0));
  sample_cmd->add_option("--seed", seed)->capture_default_str();
  sample_cmd->add_option("--output,-o", output, "Edge list destination (default stdout)");

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "Sample beta_1 over an (n, p) grid");
  GridConfig grid;
  std::string grid_flavor = "nonregular";
  std::vector<int> n_range;
  std::vector<double> p_range;
  int experiment = 0;
  bool full_scale = false;
  std::string prefix = "grid";
  grid_cmd->add_option("--homology", grid_flavor)
      ->check(CLI::IsMember({"nonregular", "regular", "dflag"}))
      ->capture_default_str();
  grid_cmd->add_option("--experiment", experiment, "Take flavor and ranges from a reference experiment (1-4)")
      ->check(CLI::Range(1, 4));
  grid_cmd->add_flag("--full-scale", full_scale, "With --experiment, use its full n range and sample count");
  grid_cmd->add_option("--n-range", n_range, "n_min n_max")->expected(2);
  grid_cmd->add_option("--n-step", grid.n_step)->capture_default_str();
  grid_cmd->add_option("--p-range", p_range, "p_min p_max")->expected(2);
  grid_cmd->add_option("--p-count", grid.p_count)->capture_default_str();
  grid_cmd->add_option("--samples", grid.samples)->capture_default_str();
  grid_cmd->add_option("--max-degree", grid.max_degree)->capture_default_str();
  grid_cmd->add_flag("--check-regular", grid.check_regular, "Also compute regular beta_1 and assert it is smaller");
  grid_cmd->add_option("--budget", grid.cost_budget, "Cost estimate above which a warning is printed")
      ->capture_default_str();
  grid_cmd->add_option("--seed", seed)->capture_default_str();
  grid_cmd->add_option("--jobs,-j", jobs, "Worker threads (default $PHOM_JOBS or 1)")->capture_default_str();
  grid_cmd->add_option("--output,-o", prefix, "Writes PREFIX.jsonl, PREFIX_samples.csv, PREFIX_summary.csv")
      ->capture_default_str();

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a probability bound or its threshold");
  std::string kind_name = "lower-region", bound_homology = "path", numerator = "expectation";
  double alpha = 0.0;
  bounds_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--p", p, "Edge probability (omit with --alpha)")->check(CLI::Range(0.0, 1.0));
  bounds_cmd->add_option("--kind", kind_name)
      ->check(CLI::IsMember({"lower-region", "second-moment", "high-density", "high-density-naive"}))
      ->capture_default_str();
  bounds_cmd->add_option("--homology", bound_homology, "path, regular-path or dflag")->capture_default_str();
  bounds_cmd->add_option("--alpha", alpha, "Report the threshold p at this level instead")
      ->check(CLI::Range(0.0, 1.0));
  bounds_cmd->add_option("--numerator", numerator, "second-moment numerator")
      ->check(CLI::IsMember({"expectation", "printed"}))
      ->capture_default_str();

  // qmatrix
  auto* q_cmd = app.add_subcommand("qmatrix", "Recompute the motif class tables c and Q");
  std::string q_homology = "path";
  q_cmd->add_option("--homology", q_homology)->check(CLI::IsMember({"path", "dflag"}))->capture_default_str();

  // mc-test
  auto* mc_cmd = app.add_subcommand("mc-test", "Monte Carlo significance of beta_1 per community");
  std::string labels, ties = "conservative", mc_output;
  McOptions mc;
  mc_cmd->add_option("--input,-i", input, "Edge list file")->required();
  mc_cmd->add_option("--labels", labels, "'vertex community' lines; omit to test the whole graph");
  mc_cmd->add_option("--null-samples,-N", mc.null_samples)->capture_default_str();
  mc_cmd->add_option("--alpha", mc.alpha)->capture_default_str();
  mc_cmd->add_option("--comparisons,-k", mc.comparisons, "Bonferroni divisor without --labels")
      ->capture_default_str();
  mc_cmd->add_option("--ties", ties)->check(CLI::IsMember({"conservative", "randomized"}))->capture_default_str();
  mc_cmd->add_option("--seed", seed)->capture_default_str();
  mc_cmd->add_option("--jobs,-j", jobs)->capture_default_str();
  mc_cmd->add_option("--output,-o", mc_output, "JSON result file");

  // fit-boundary
  auto* fit_cmd = app.add_subcommand("fit-boundary", "Fit p = A n^gamma to boundary points");
  std::string points_file, grid_file, which = "lower";
  double threshold = 0.95;
  auto* points_opt = fit_cmd->add_option("--points", points_file, "File of 'n p' lines");
  auto* grid_opt = fit_cmd->add_option("--grid", grid_file, "Grid .jsonl file from the grid subcommand");
  points_opt->excludes(grid_opt);
  fit_cmd->add_option("--which", which)->check(CLI::IsMember({"lower", "upper"}))->capture_default_str();
  fit_cmd->add_option("--threshold", threshold)->capture_default_str();

  // check-condition
  auto* cond_cmd = app.add_subcommand("check-condition", "Test the high-density vanishing condition");
  cond_cmd->add_option("--input,-i", input, "Edge list file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  const Format format = format_name == "json" ? Format::json : Format::table;

  try {
    if (*betti_cmd) return run_betti(input, flavor, K, format);
    if (*sample_cmd) return run_sample(n, p, seed, output, format);
    if (*q_cmd) return run_qmatrix(q_homology, format);

    if (*bounds_cmd) {
      const BoundKind kind = *parse_bound_kind(kind_name);
      const Flavor f = parse_bound_flavor(bound_homology);
      if (alpha > 0.0) {
        const auto t = threshold_p(n, alpha, kind, f);
        if (format == Format::json) {
          Json j{{"n", n}, {"alpha", alpha}, {"kind", kind}, {"homology", f}, {"threshold_p", nullptr}};
          if (t) j["threshold_p"] = *t;
          std::cout << j.dump() << "\n";
        } else {
          std::cout << "threshold_p " << (t ? std::to_string(*t) : std::string("none")) << "\n";
        }
        return 0;
      }
      if (bounds_cmd->count("--p") == 0) throw CLI::ValidationError("--p", "required unless --alpha is given");
      const BoundResult b =
          kind == BoundKind::second_moment
              ? bound_second_moment(n, p, f,
                                    numerator == "printed" ? SecondMomentNumerator::printed
                                                           : SecondMomentNumerator::expectation)
              : evaluate_bound(kind, n, p, f);
      if (format == Format::json)
        std::cout << Json(b).dump() << "\n";
      else
        std::cout << b.value << "\n";
      return 0;
    }

    if (*grid_cmd) {
      grid.flavor = *parse_flavor(grid_flavor);
      if (experiment > 0) {
        const auto spec = reference_experiment(experiment);
        grid.flavor = spec.flavor;
        grid.p_min = spec.p_min;
        grid.p_max = spec.p_max;
        if (full_scale) {
          grid.n_min = spec.n_min;
          grid.n_max = spec.n_max;
          grid.samples = spec.samples;
        }
      }
      if (!n_range.empty()) {
        grid.n_min = n_range[0];
        grid.n_max = n_range[1];
      }
      if (!p_range.empty()) {
        grid.p_min = p_range[0];
        grid.p_max = p_range[1];
      }
      grid.master_seed = seed;
      grid.jobs = jobs;
      std::cerr << "grid seed " << seed << ", estimated cost " << estimate_grid_cost(grid) << "\n";
      GridHooks hooks;
      hooks.warn = [](const std::string& m) { std::cerr << "warning: " << m << "\n"; };
      std::size_t last_percent = 0;
      hooks.progress = [&](std::size_t done, std::size_t total) {
        const std::size_t percent = done * 100 / total;
        if (percent != last_percent) {
          last_percent = percent;
          std::cerr << "\r" << percent << "%" << std::flush;
          if (done == total) std::cerr << "\n";
        }
      };
      const GridResult result = run_grid(grid, hooks);
      {
        auto f = open_output(prefix + ".jsonl");
        write_grid_jsonl(f, result);
      }
      {
        auto f = open_output(prefix + "_samples.csv");
        write_grid_samples_csv(f, result);
      }
      {
        auto f = open_output(prefix + "_summary.csv");
        write_grid_summary_csv(f, result);
      }
      if (format == Format::json)
        std::cout << Json{{"seed", seed}, {"files", {prefix + ".jsonl", prefix + "_samples.csv", prefix + "_summary.csv"}}}
                         .dump()
                  << "\n";
      else
        std::cout << "seed " << seed << "\nwrote " << prefix << ".jsonl " << prefix << "_samples.csv " << prefix
                  << "_summary.csv\n";
      return 0;
    }

    if (*mc_cmd) {
      mc.seed = seed;
      mc.jobs = jobs;
      mc.ties = ties == "randomized" ? TiePolicy::randomized : TiePolicy::conservative;
      const ParsedGraph parsed = load_graph(input, labels);
      std::vector<McTestResult> results;
      if (labels.empty()) {
        results.push_back(mc_significance_test(parsed.graph, mc));
      } else {
        results = community_analysis(parsed, mc, [](const std::string& m) { std::cerr << "note: " << m << "\n"; });
      }
      const Json j{{"phom", PHOM_VERSION}, {"seed", seed}, {"results", results}};
      if (!mc_output.empty()) open_output(mc_output) << j.dump(2) << "\n";
      if (format == Format::json) {
        std::cout << j.dump() << "\n";
      } else {
        std::cout << "seed " << seed << "\n"
                  << std::left << std::setw(12) << "community" << std::right << std::setw(6) << "n" << std::setw(11)
                  << "density" << std::setw(8) << "beta1" << std::setw(8) << "rank" << std::setw(8) << "ties"
                  << std::setw(6) << "max" << "  significant\n";
        for (const auto& r : results) print_mc(r);
      }
      return 0;
    }

    if (*fit_cmd) {
      std::vector<BoundaryPoint> points;
      if (!grid_file.empty()) {
        std::ifstream in(grid_file);
        if (!in) throw DataError("cannot open '" + grid_file + "'");
        const Boundaries b = extract_boundaries(read_grid_jsonl(in), threshold);
        points = which == "lower" ? b.lower : b.upper;
      } else if (!points_file.empty()) {
        std::ifstream in(points_file);
        if (!in) throw DataError("cannot open '" + points_file + "'");
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
          ++line_no;
          if (line.empty() || line[0] == '#') continue;
          std::istringstream row(line);
          BoundaryPoint pt;
          if (!(row >> pt.n >> pt.p)) throw DataError(points_file + ": line " + std::to_string(line_no) + ": expected 'n p'");
          points.push_back(pt);
        }
      } else {
        throw CLI::ValidationError("fit-boundary", "give --points or --grid");
      }
      if (points.size() < 2) throw DataError("fewer than two boundary points");
      const BoundaryFit fit = fit_power_law(points);
      if (format == Format::json)
        std::cout << Json(fit).dump() << "\n";
      else
        std::cout << "A=" << fit.A << " gamma=" << fit.gamma << " rss=" << fit.rss << " points=" << points.size()
                  << "\n";
      return 0;
    }

    if (*cond_cmd) {
      const ConditionResult r = high_density_condition(load_graph(input).graph);
      if (format == Format::json)
        std::cout << Json{{"holds", r.holds}, {"certificate", r.certificate}}.dump() << "\n";
      else
        std::cout << (r.holds ? std::string("true") : "false: " + r.certificate) << "\n";
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
