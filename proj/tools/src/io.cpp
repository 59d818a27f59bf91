#include "io.hpp"

#include <charconv>
#include <fstream>

#include "centralcfg/errors.hpp"

namespace centralcfg::cli {

namespace {

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd parse_matrix(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) throw InvalidInput(std::string(what) + " must be a non-empty array of rows");
  const std::size_t cols = rows.front().is_array() ? rows.front().size() : 0;
  if (cols == 0) throw InvalidInput(std::string(what) + " rows must be non-empty arrays");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) {
      throw InvalidInput(std::string(what) + " rows must all have length " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!rows[i][j].is_number()) throw InvalidInput(std::string(what) + " entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
    }
  }
  return m;
}

std::optional<std::vector<double>> optional_masses(const json& doc) {
  if (!doc.contains("masses")) return std::nullopt;
  const json& m = doc.at("masses");
  if (!m.is_array()) throw InvalidInput("masses must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : m) {
    if (!v.is_number()) throw InvalidInput("masses must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

json labels(const std::vector<int>& zero_based) {
  json out = json::array();
  for (int i : zero_based) out.push_back(i + 1);
  return out;
}

}  // namespace

json residuals_json(const dziobek::Residuals& r) {
  return {{"t_spread", r.t_spread},
          {"dziobek_fit", r.dziobek_fit},
          {"cayley_menger", r.cayley_menger},
          {"direct", r.direct}};
}

json solution_json(const dziobek::CCSolution& sol) {
  json j;
  j["masses"] = std::vector<double>(sol.masses.values().begin(), sol.masses.values().end());
  j["a"] = sol.exponent.a();
  j["deltas"] = std::vector<double>(sol.deltas.values().begin(), sol.deltas.values().end());
  j["s"] = matrix_json(sol.distances.matrix());
  j["positions"] = matrix_json(sol.positions.matrix());
  j["mu"] = sol.mu;
  j["lambda_over_M"] = sol.lambda_over_M;
  j["residuals"] = residuals_json(sol.residuals);
  j["accepted"] = sol.accepted;
  return j;
}

json analysis_json(const analysis::AnalysisReport& report) {
  json symmetry;
  symmetry["tolerance"] = report.symmetry.tolerance;
  symmetry["checks"] = json::array();
  for (const auto& c : report.symmetry.checks) {
    symmetry["checks"].push_back({{"mirrored", labels(c.mirrored)},
                                  {"fixed", labels(c.fixed)},
                                  {"distance_asymmetry", c.distance_asymmetry},
                                  {"delta_gap", c.delta_gap},
                                  {"symmetric", c.symmetric}});
  }
  json ordering = nullptr;
  if (report.ordering) {
    const auto& o = *report.ordering;
    ordering = {{"mass_order", o.mass_order},
                {"area_order", o.area_order},
                {"height_order", o.height_order},
                {"distance_orders", o.distance_orders},
                {"area_height_gap", o.area_height_gap},
                {"consistent", o.consistent}};
  }
  json j;
  j["symmetry"] = std::move(symmetry);
  j["ordering"] = std::move(ordering);
  j["routh_residual"] = report.routh_residual ? json(*report.routh_residual) : json(nullptr);
  j["product_residual"] = report.product_residual ? json(*report.product_residual) : json(nullptr);
  j["convexity"] = {{"class", analysis::to_string(report.convexity.kind)},
                    {"negative_indices", labels(report.convexity.negative_indices)},
                    {"special", labels(report.convexity.special)}};
  return j;
}

json property_json(const lemmas::PropertyReport& report) {
  json j;
  j["lemma"] = report.lemma;
  j["samples"] = report.samples;
  j["min_value"] = report.min_value;
  j["argmin"] = report.argmin;
  j["seed"] = report.seed;
  j["pass"] = report.pass;
  j["diagnostics"] = report.diagnostics;
  j["failures"] = report.failures;
  return j;
}

PositionsFile parse_positions(const json& doc) {
  if (!doc.is_object() || !doc.contains("points")) throw InvalidInput("positions file needs a \"points\" array");
  PositionsFile out{Configuration(parse_matrix(doc.at("points"), "points")), optional_masses(doc)};
  if (doc.contains("dim")) {
    if (!doc.at("dim").is_number_integer() || doc.at("dim").get<int>() != out.points.dim()) {
      throw InvalidInput("\"dim\" does not match the length of the points");
    }
  }
  return out;
}

json positions_json(const Configuration& config, const std::optional<std::vector<double>>& masses) {
  json j;
  j["dim"] = config.dim();
  j["points"] = matrix_json(config.matrix());
  if (masses) j["masses"] = *masses;
  return j;
}

DistancesFile parse_distances(const json& doc) {
  if (!doc.is_object() || !doc.contains("s")) throw InvalidInput("distances file needs an \"s\" matrix");
  DistancesFile out{parse_matrix(doc.at("s"), "s"), std::nullopt, optional_masses(doc)};
  if (doc.contains("dim")) {
    if (!doc.at("dim").is_number_integer()) throw InvalidInput("\"dim\" must be an integer");
    out.dim = doc.at("dim").get<int>();
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw InvalidInput("'" + item + "' is not a number in list '" + text + "'");
    }
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

}  // namespace centralcfg::cli
