#include "phom/report.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace phom {

namespace {

template <typename Enum, typename Parse>
Enum parse_enum(const Json& j, Parse&& parse, const char* what) {
  const auto name = j.get<std::string>();
  const auto value = parse(name);
  if (!value) throw std::invalid_argument(std::string("unknown ") + what + " '" + name + "'");
  return *value;
}

}  // namespace

void to_json(Json& j, Flavor f) { j = std::string(to_string(f)); }
void from_json(const Json& j, Flavor& f) { f = parse_enum<Flavor>(j, parse_flavor, "flavor"); }
void to_json(Json& j, MotifHomology h) { j = std::string(to_string(h)); }
void from_json(const Json& j, MotifHomology& h) { h = parse_enum<MotifHomology>(j, parse_motif_homology, "homology"); }
void to_json(Json& j, BoundKind k) { j = std::string(to_string(k)); }
void from_json(const Json& j, BoundKind& k) { k = parse_enum<BoundKind>(j, parse_bound_kind, "bound kind"); }
void to_json(Json& j, TiePolicy t) { j = t == TiePolicy::conservative ? "conservative" : "randomized"; }
void from_json(const Json& j, TiePolicy& t) {
  t = parse_enum<TiePolicy>(
      j,
      [](const std::string& s) -> std::optional<TiePolicy> {
        if (s == "conservative") return TiePolicy::conservative;
        if (s == "randomized") return TiePolicy::randomized;
        return std::nullopt;
      },
      "tie policy");
}

void to_json(Json& j, const ChainComplexSummary& s) {
  j = Json{{"flavor", s.flavor}, {"K", s.max_degree}, {"n_k", s.ranks}, {"r_k", s.boundary_ranks}, {"betti", s.betti}};
}
void from_json(const Json& j, ChainComplexSummary& s) {
  j.at("flavor").get_to(s.flavor);
  j.at("K").get_to(s.max_degree);
  j.at("n_k").get_to(s.ranks);
  j.at("r_k").get_to(s.boundary_ranks);
  j.at("betti").get_to(s.betti);
}

void to_json(Json& j, const ComparativeBetti1& b) {
  j = Json{{"flat_graph", b.flat_graph}, {"weak_multigraph", b.weak_multigraph}, {"clique_flat", b.clique_flat},
           {"dflag", b.dflag}, {"nonregular", b.nonregular}, {"regular", b.regular}};
}
void from_json(const Json& j, ComparativeBetti1& b) {
  j.at("flat_graph").get_to(b.flat_graph);
  j.at("weak_multigraph").get_to(b.weak_multigraph);
  j.at("clique_flat").get_to(b.clique_flat);
  j.at("dflag").get_to(b.dflag);
  j.at("nonregular").get_to(b.nonregular);
  j.at("regular").get_to(b.regular);
}

void to_json(Json& j, const BoundResult& b) {
  j = Json{{"n", b.n}, {"p", b.p}, {"kind", b.kind}, {"homology", b.flavor}, {"value", b.value}, {"raw", b.raw}};
}
void from_json(const Json& j, BoundResult& b) {
  j.at("n").get_to(b.n);
  j.at("p").get_to(b.p);
  j.at("kind").get_to(b.kind);
  j.at("homology").get_to(b.flavor);
  j.at("value").get_to(b.value);
  j.at("raw").get_to(b.raw);
}

void to_json(Json& j, const MotifClassTables& t) { j = Json{{"homology", t.homology}, {"c", t.c}, {"Q", t.Q}}; }
void from_json(const Json& j, MotifClassTables& t) {
  j.at("homology").get_to(t.homology);
  j.at("c").get_to(t.c);
  j.at("Q").get_to(t.Q);
}

void to_json(Json& j, const BoundaryPoint& p) { j = Json::array({p.n, p.p}); }
void from_json(const Json& j, BoundaryPoint& p) {
  j.at(0).get_to(p.n);
  j.at(1).get_to(p.p);
}

void to_json(Json& j, const BoundaryFit& f) {
  j = Json{{"points", f.points}, {"A", f.A}, {"gamma", f.gamma}, {"rss", f.rss}};
}
void from_json(const Json& j, BoundaryFit& f) {
  j.at("points").get_to(f.points);
  j.at("A").get_to(f.A);
  j.at("gamma").get_to(f.gamma);
  j.at("rss").get_to(f.rss);
}

void to_json(Json& j, const McTestResult& r) {
  j = Json{{"community", r.community},
           {"nodes", r.nodes},
           {"density", r.density},
           {"observed_beta1", r.observed},
           {"null_samples", r.null_samples},
           {"tie_policy", r.policy},
           {"rank", r.rank},
           {"conservative_rank", r.conservative_rank},
           {"ties", r.ties},
           {"comparisons", r.comparisons},
           {"alpha", r.alpha},
           {"per_test_threshold", r.threshold},
           {"significant", r.significant},
           {"seed", r.seed}};
}
void from_json(const Json& j, McTestResult& r) {
  j.at("community").get_to(r.community);
  j.at("nodes").get_to(r.nodes);
  j.at("density").get_to(r.density);
  j.at("observed_beta1").get_to(r.observed);
  j.at("null_samples").get_to(r.null_samples);
  j.at("tie_policy").get_to(r.policy);
  j.at("rank").get_to(r.rank);
  j.at("conservative_rank").get_to(r.conservative_rank);
  j.at("ties").get_to(r.ties);
  j.at("comparisons").get_to(r.comparisons);
  j.at("alpha").get_to(r.alpha);
  j.at("per_test_threshold").get_to(r.threshold);
  j.at("significant").get_to(r.significant);
  j.at("seed").get_to(r.seed);
}

void to_json(Json& j, const NormalitySummary& s) {
  j = Json{{"skewness", s.skewness}, {"excess_kurtosis", s.excess_kurtosis}, {"jarque_bera", s.jarque_bera},
           {"p_value", s.p_value}};
}
void from_json(const Json& j, NormalitySummary& s) {
  j.at("skewness").get_to(s.skewness);
  j.at("excess_kurtosis").get_to(s.excess_kurtosis);
  j.at("jarque_bera").get_to(s.jarque_bera);
  j.at("p_value").get_to(s.p_value);
}

void to_json(Json& j, const GridConfig& c) {
  j = Json{{"flavor", c.flavor},   {"samples", c.samples},         {"n_min", c.n_min},
           {"n_max", c.n_max},     {"n_step", c.n_step},           {"p_min", c.p_min},
           {"p_max", c.p_max},     {"p_count", c.p_count},         {"master_seed", c.master_seed},
           {"max_degree", c.max_degree}, {"check_regular", c.check_regular}};
}
void from_json(const Json& j, GridConfig& c) {
  j.at("flavor").get_to(c.flavor);
  j.at("samples").get_to(c.samples);
  j.at("n_min").get_to(c.n_min);
  j.at("n_max").get_to(c.n_max);
  j.at("n_step").get_to(c.n_step);
  j.at("p_min").get_to(c.p_min);
  j.at("p_max").get_to(c.p_max);
  j.at("p_count").get_to(c.p_count);
  j.at("master_seed").get_to(c.master_seed);
  j.at("max_degree").get_to(c.max_degree);
  j.at("check_regular").get_to(c.check_regular);
}

void to_json(Json& j, const GridSample& s) {
  j = Json{{"seed", s.seed}, {"betti", s.betti}};
  if (s.beta1_regular) j["beta1_regular"] = *s.beta1_regular;
}
void from_json(const Json& j, GridSample& s) {
  j.at("seed").get_to(s.seed);
  j.at("betti").get_to(s.betti);
  s.beta1_regular.reset();
  if (j.contains("beta1_regular")) s.beta1_regular = j.at("beta1_regular").get<Index>();
}

void to_json(Json& j, const GridCell& c) {
  j = Json{{"n", c.n},
           {"p_index", c.p_index},
           {"p", c.p},
           {"frac_zero", c.frac_zero()},
           {"mean_beta1", c.mean_beta1()},
           {"normalized_mean", c.normalized_mean()},
           {"samples", c.samples}};
}
void from_json(const Json& j, GridCell& c) {
  j.at("n").get_to(c.n);
  j.at("p_index").get_to(c.p_index);
  j.at("p").get_to(c.p);
  j.at("samples").get_to(c.samples);
}

void write_grid_jsonl(std::ostream& out, const GridResult& grid) {
  out << Json{{"phom", PHOM_VERSION}, {"config", grid.config}}.dump() << "\n";
  for (const auto& cell : grid.cells) out << Json(cell).dump() << "\n";
}

GridResult read_grid_jsonl(std::istream& in) {
  GridResult grid;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty grid file");
  Json::parse(line).at("config").get_to(grid.config);
  while (std::getline(in, line))
    if (!line.empty()) grid.cells.push_back(Json::parse(line).get<GridCell>());
  return grid;
}

}  // namespace phom
