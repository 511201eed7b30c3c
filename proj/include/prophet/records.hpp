#pragma once

#include <iosfwd>

#include <json.hpp>

#include "prophet/experiments.hpp"
#include "prophet/voronoi.hpp"

namespace prophet {

using Json = nlohmann::ordered_json;

Json to_json(const SummaryStats& s);
Json to_json(const ExperimentConfig& config);
Json to_json(const TrialResult& r);

/// {config, stats:{...}, gates:[{name, value, threshold, pass}], warnings:[...]}.
/// Scalar metrics are emitted inside "stats" alongside the distributions.
Json summary_json(const ExperimentReport& report);

/// {sites:[[x,y]...], cells:[{site, area, polygon:[[x,y]...]}]}.
Json diagram_json(const VoronoiDiagram& diagram);

/// One JSON object per row, keys in column order.
void write_jsonl(std::ostream& out, const RecordTable& table);

/// Header row of column names, then one row per record. Doubles are written
/// in shortest round-trip form, booleans as true/false.
void write_csv(std::ostream& out, const RecordTable& table);

}  // namespace prophet
