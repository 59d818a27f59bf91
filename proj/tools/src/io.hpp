#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "centralcfg/analysis.hpp"
#include "centralcfg/dziobek.hpp"
#include "centralcfg/lemmas.hpp"

namespace centralcfg::cli {

using nlohmann::json;

/// {"masses","a","deltas","s","positions","mu","lambda_over_M","residuals","accepted"}
json solution_json(const dziobek::CCSolution& sol);

json residuals_json(const dziobek::Residuals& r);

/// {"symmetry","ordering","routh_residual","product_residual","convexity"};
/// particle labels are 1-based.
json analysis_json(const analysis::AnalysisReport& report);

/// {"lemma","samples","min_value","argmin","seed","pass"} plus diagnostics.
json property_json(const lemmas::PropertyReport& report);

/// Positions file {"dim": d, "points": [[...], ...], "masses": [...]}.
struct PositionsFile {
  Configuration points;
  std::optional<std::vector<double>> masses;
};

PositionsFile parse_positions(const json& doc);
json positions_json(const Configuration& config, const std::optional<std::vector<double>>& masses);

/// Distances file {"s": [[...], ...]} with optional "dim" and "masses".
struct DistancesFile {
  Eigen::MatrixXd s;
  std::optional<int> dim;
  std::optional<std::vector<double>> masses;
};

DistancesFile parse_distances(const json& doc);

json read_json_file(const std::string& path);

/// Comma-separated reals, e.g. "1,2,0.5".
std::vector<double> parse_real_list(const std::string& text);

}  // namespace centralcfg::cli
