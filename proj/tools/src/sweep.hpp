#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "io.hpp"

namespace centralcfg::cli {

struct SweepSpec {
  /// One value list per mass coordinate; the grid is their Cartesian product
  /// with the last coordinate varying fastest.
  std::vector<std::vector<double>> mass_axes;
  /// Explicit mass vectors, used instead of mass_axes when non-empty.
  std::vector<std::vector<double>> mass_list;
  std::vector<double> exponents;
  /// Empty selects two minus signs followed by plus signs.
  std::string pattern;
  dziobek::Tolerances tolerances;
  std::uint64_t seed = 0;
  int starts = 16;
  int threads = 1;
  double symmetry_tolerance = 1e-7;
};

/// "x", "lo:hi:step" (inclusive, step > 0) or "x|y|z".
std::vector<double> parse_axis(std::string_view text);

/// Grid points in row order; throws InvalidInput on an empty grid,
/// non-positive masses, mixed body counts or a zero exponent.
struct GridPoint {
  std::vector<double> masses;
  double a = 0.0;
};
std::vector<GridPoint> expand_grid(const SweepSpec& spec);

/// Canonical JSON of a SweepSpec (the input of spec_hash).
json spec_json(const SweepSpec& spec);
/// 64-bit FNV-1a of the canonical spec JSON, as 16 hex digits.
std::string spec_hash(const SweepSpec& spec);

struct SweepRow {
  std::size_t index = 0;
  GridPoint point;
  /// accepted, spurious-only, no-convergence or error
  std::string status;
  std::string error;
  std::size_t accepted_count = 0;
  std::size_t spurious_count = 0;
  /// First accepted root (lexicographic order).
  std::optional<dziobek::CCSolution> solution;
  std::optional<analysis::AnalysisReport> report;
  /// Names of the theorem or tolerance checks that failed on any accepted root.
  std::vector<std::string> violations;
};

SweepRow evaluate_point(std::size_t index, const GridPoint& point, const SweepSpec& spec);

struct SweepResult {
  std::vector<SweepRow> rows;
  json summary;
};

/// Evaluates every grid point on a pool of spec.threads workers; rows come
/// back in grid order.
SweepResult run_sweep(const SweepSpec& spec);

/// Header plus one line per row, 17 significant digits, fixed column order.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, std::size_t bodies);
json rows_json(const std::vector<SweepRow>& rows);

/// x,y data for asymmetry against mass gap: index,mass_gap,distance_asymmetry,delta_gap.
void write_plot_data(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace centralcfg::cli
