#pragma once

// JSON forms of the result records. Each type round-trips: from_json(to_json(x)) == x.
// Grids are stored as JSON lines: one config object, then one object per cell.

#include "phom/bounds.hpp"
#include "phom/experiment.hpp"
#include "phom/homology.hpp"
#include "phom/structure.hpp"

#include <json.hpp>

#include <iosfwd>

namespace phom {

using Json = nlohmann::json;

void to_json(Json& j, Flavor f);
void from_json(const Json& j, Flavor& f);
void to_json(Json& j, MotifHomology h);
void from_json(const Json& j, MotifHomology& h);
void to_json(Json& j, BoundKind k);
void from_json(const Json& j, BoundKind& k);
void to_json(Json& j, TiePolicy t);
void from_json(const Json& j, TiePolicy& t);

void to_json(Json& j, const ChainComplexSummary& s);
void from_json(const Json& j, ChainComplexSummary& s);
void to_json(Json& j, const ComparativeBetti1& b);
void from_json(const Json& j, ComparativeBetti1& b);
void to_json(Json& j, const BoundResult& b);
void from_json(const Json& j, BoundResult& b);
void to_json(Json& j, const MotifClassTables& t);
void from_json(const Json& j, MotifClassTables& t);
void to_json(Json& j, const BoundaryPoint& p);
void from_json(const Json& j, BoundaryPoint& p);
void to_json(Json& j, const BoundaryFit& f);
void from_json(const Json& j, BoundaryFit& f);
void to_json(Json& j, const McTestResult& r);
void from_json(const Json& j, McTestResult& r);
void to_json(Json& j, const NormalitySummary& s);
void from_json(const Json& j, NormalitySummary& s);
void to_json(Json& j, const GridConfig& c);
void from_json(const Json& j, GridConfig& c);
void to_json(Json& j, const GridSample& s);
void from_json(const Json& j, GridSample& s);
void to_json(Json& j, const GridCell& c);
void from_json(const Json& j, GridCell& c);

/// Header line {"phom": version, "config": ...} followed by one line per cell.
void write_grid_jsonl(std::ostream& out, const GridResult& grid);
GridResult read_grid_jsonl(std::istream& in);

}  // namespace phom
