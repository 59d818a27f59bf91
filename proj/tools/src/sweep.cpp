#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>

#include "centralcfg/errors.hpp"

namespace centralcfg::cli {

namespace {

double parse_real(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInput("'" + std::string(text) + "' is not a number");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

std::string format_real(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

std::string pattern_for(const SweepSpec& spec, std::size_t n) {
  if (!spec.pattern.empty()) return spec.pattern;
  return "--" + std::string(n - 2, '+');
}

bool masses_equal(double x, double y, double tolerance) { return std::abs(x - y) < tolerance * (x + y); }

void check_solution(const dziobek::CCSolution& sol, const analysis::AnalysisReport& report, const SweepSpec& spec,
                    std::vector<std::string>& violations) {
  auto flag = [&](const std::string& name) {
    if (std::find(violations.begin(), violations.end(), name) == violations.end()) violations.push_back(name);
  };
  const dziobek::Tolerances& tol = spec.tolerances;
  const dziobek::Residuals& r = sol.residuals;
  if (!(r.t_spread < tol.t_spread && r.dziobek_fit < tol.dziobek_fit && r.cayley_menger < tol.cayley_menger &&
        r.direct < tol.direct)) {
    flag("residual_above_tolerance");
  }
  if (!(sol.mu < 0.0)) flag("mu_not_negative");
  const std::vector<double> products = lemmas::lemma1_products(sol.deltas.values(), sol.masses);
  if (*std::min_element(products.begin(), products.end()) < -1e-12) flag("lemma1");

  const std::size_t n = sol.masses.size();
  const bool diagonal12 = report.convexity.kind == analysis::ConvexityKind::convex_diagonal &&
                          report.convexity.special == std::vector<int>{0, 1};
  if (!diagonal12) return;
  const double st = spec.symmetry_tolerance;
  if (report.symmetry.checks[0].symmetric != masses_equal(sol.masses[0], sol.masses[1], st)) flag("symmetry_12");
  if (n == 4 && report.symmetry.checks[1].symmetric != masses_equal(sol.masses[2], sol.masses[3], st)) {
    flag("symmetry_34");
  }
  if (report.ordering && !report.ordering->consistent) flag("ordering");
  if (report.routh_residual && !(*report.routh_residual < 1e-8)) flag("routh");
  if (report.product_residual && !(*report.product_residual < 1e-9)) flag("product_relation");
}

}  // namespace

std::vector<double> parse_axis(std::string_view text) {
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InvalidInput("range '" + std::string(text) + "' must be lo:hi:step");
    const double lo = parse_real(parts[0]);
    const double hi = parse_real(parts[1]);
    const double step = parse_real(parts[2]);
    if (!(step > 0.0) || hi < lo) throw InvalidInput("range '" + std::string(text) + "' needs lo <= hi and step > 0");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> values;
    for (long k = 0; k < count; ++k) values.push_back(lo + static_cast<double>(k) * step);
    return values;
  }
  std::vector<double> values;
  for (auto part : split(text, '|')) values.push_back(parse_real(part));
  return values;
}

std::vector<GridPoint> expand_grid(const SweepSpec& spec) {
  if (spec.exponents.empty()) throw InvalidInput("sweep needs at least one exponent");
  for (double a : spec.exponents) {
    if (a == 0.0 || !std::isfinite(a)) throw InvalidInput("exponents must be finite and nonzero");
  }
  std::vector<std::vector<double>> vectors = spec.mass_list;
  if (vectors.empty()) {
    if (spec.mass_axes.empty()) throw InvalidInput("empty mass grid");
    vectors.push_back({});
    for (const auto& axis : spec.mass_axes) {
      std::vector<std::vector<double>> next;
      for (const auto& prefix : vectors) {
        for (double v : axis) {
          next.push_back(prefix);
          next.back().push_back(v);
        }
      }
      vectors = std::move(next);
    }
  }
  if (vectors.empty() || vectors.front().empty()) throw InvalidInput("empty mass grid");
  const std::size_t n = vectors.front().size();
  for (const auto& m : vectors) {
    if (m.size() != n) throw InvalidInput("all mass vectors in a sweep must have the same length");
    for (double x : m) {
      if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput("masses must be positive");
    }
  }
  if (n < 4) throw InvalidInput("sweeps need at least four bodies");
  if (!spec.pattern.empty() && spec.pattern.size() != n) {
    throw InvalidInput("sign pattern length " + std::to_string(spec.pattern.size()) + " does not match " +
                       std::to_string(n) + " masses");
  }
  std::vector<GridPoint> grid;
  for (double a : spec.exponents) {
    for (const auto& m : vectors) grid.push_back({m, a});
  }
  return grid;
}

json spec_json(const SweepSpec& spec) {
  json j;
  j["mass_axes"] = spec.mass_axes;
  j["mass_list"] = spec.mass_list;
  j["exponents"] = spec.exponents;
  j["pattern"] = spec.pattern;
  j["tolerances"] = {{"t_spread", spec.tolerances.t_spread},
                     {"dziobek_fit", spec.tolerances.dziobek_fit},
                     {"cayley_menger", spec.tolerances.cayley_menger},
                     {"direct", spec.tolerances.direct}};
  j["seed"] = spec.seed;
  j["starts"] = spec.starts;
  j["symmetry_tolerance"] = spec.symmetry_tolerance;
  return j;
}

std::string spec_hash(const SweepSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : spec_json(spec).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

SweepRow evaluate_point(std::size_t index, const GridPoint& point, const SweepSpec& spec) {
  SweepRow row;
  row.index = index;
  row.point = point;
  try {
    const MassVector masses(point.masses);
    const Exponent exponent(point.a);
    dziobek::SolverOptions options;
    options.starts = spec.starts;
    options.seed = spec.seed;
    options.tolerances = spec.tolerances;
    const dziobek::SolveOutcome outcome =
        dziobek::solve_all(masses, exponent, dziobek::parse_sign_pattern(pattern_for(spec, masses.size())), options);
    row.accepted_count = outcome.accepted.size();
    row.spurious_count = outcome.spurious.size();
    if (!outcome.accepted.empty()) {
      row.status = "accepted";
      for (const auto& sol : outcome.accepted) {
        const analysis::AnalysisReport report = analysis::analyze(sol, spec.symmetry_tolerance);
        check_solution(sol, report, spec, row.violations);
        if (!row.solution) {
          row.solution = sol;
          row.report = report;
        }
      }
    } else {
      row.status = outcome.spurious.empty() ? "no-convergence" : "spurious-only";
    }
  } catch (const Error& e) {
    row.status = "error";
    row.error = e.what();
  }
  return row;
}

SweepResult run_sweep(const SweepSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<GridPoint> grid = expand_grid(spec);
  SweepResult result;
  result.rows.resize(grid.size());
  const int workers = std::clamp(spec.threads, 1, static_cast<int>(grid.size()));
  {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) result.rows[i] = evaluate_point(i, grid[i], spec);
      });
    }
  }

  std::map<std::string, int> status_counts;
  std::map<std::string, int> violation_counts;
  std::size_t accepted_roots = 0;
  std::size_t spurious_roots = 0;
  std::size_t multiple = 0;
  for (const auto& row : result.rows) {
    ++status_counts[row.status];
    accepted_roots += row.accepted_count;
    spurious_roots += row.spurious_count;
    if (row.accepted_count > 1) ++multiple;
    for (const auto& v : row.violations) ++violation_counts[v];
  }
  std::size_t total_violations = 0;
  for (const auto& [name, count] : violation_counts) total_violations += static_cast<std::size_t>(count);
  json& s = result.summary;
  s["spec"] = spec_json(spec);
  s["spec_hash"] = spec_hash(spec);
  s["points"] = result.rows.size();
  s["status_counts"] = status_counts;
  s["accepted_roots"] = accepted_roots;
  s["spurious_roots"] = spurious_roots;
  s["points_with_multiple_roots"] = multiple;
  s["violations"] = violation_counts;
  s["total_violations"] = total_violations;
  s["threads"] = workers;
  s["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, std::size_t n) {
  std::vector<std::string> header{"index", "a"};
  for (std::size_t i = 1; i <= n; ++i) header.push_back("m" + std::to_string(i));
  for (const char* c : {"status", "accepted_count", "spurious_count"}) header.emplace_back(c);
  for (std::size_t i = 1; i <= n; ++i) header.push_back("delta" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) header.push_back("s" + std::to_string(i) + std::to_string(j));
  }
  for (const char* c : {"t_spread", "dziobek_fit", "cayley_menger", "direct", "lambda_over_M", "mu", "symmetric_12",
                        "asymmetry_12", "delta_gap_12", "symmetric_34", "asymmetry_34", "mass_order", "area_order",
                        "height_order", "distance_orders_consistent", "ordering_consistent", "routh_residual",
                        "product_residual", "convexity", "violations"}) {
    header.emplace_back(c);
  }
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';

  for (const auto& row : rows) {
    std::vector<std::string> cells{std::to_string(row.index), format_real(row.point.a)};
    for (double m : row.point.masses) cells.push_back(format_real(m));
    cells.push_back(row.status);
    cells.push_back(std::to_string(row.accepted_count));
    cells.push_back(std::to_string(row.spurious_count));
    const std::size_t fixed = cells.size();
    const std::size_t total = header.size();
    if (row.solution && row.report) {
      const auto& sol = *row.solution;
      const auto& rep = *row.report;
      for (double d : sol.deltas.values()) cells.push_back(format_real(d));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) cells.push_back(format_real(sol.distances(i, j)));
      }
      for (double v : {sol.residuals.t_spread, sol.residuals.dziobek_fit, sol.residuals.cayley_menger,
                       sol.residuals.direct, sol.lambda_over_M, sol.mu}) {
        cells.push_back(format_real(v));
      }
      const auto& c12 = rep.symmetry.checks.at(0);
      cells.push_back(c12.symmetric ? "1" : "0");
      cells.push_back(format_real(c12.distance_asymmetry));
      cells.push_back(format_real(c12.delta_gap));
      if (rep.symmetry.checks.size() > 1) {
        cells.push_back(rep.symmetry.checks[1].symmetric ? "1" : "0");
        cells.push_back(format_real(rep.symmetry.checks[1].distance_asymmetry));
      } else {
        cells.insert(cells.end(), 2, "");
      }
      if (rep.ordering) {
        const auto& o = *rep.ordering;
        cells.push_back(std::to_string(o.mass_order));
        cells.push_back(std::to_string(o.area_order));
        cells.push_back(std::to_string(o.height_order));
        const bool distances_agree = std::all_of(o.distance_orders.begin(), o.distance_orders.end(),
                                                 [&](int s) { return s == o.mass_order; });
        cells.push_back(distances_agree ? "1" : "0");
        cells.push_back(o.consistent ? "1" : "0");
      } else {
        cells.insert(cells.end(), 5, "");
      }
      cells.push_back(rep.routh_residual ? format_real(*rep.routh_residual) : "");
      cells.push_back(rep.product_residual ? format_real(*rep.product_residual) : "");
      cells.push_back(analysis::to_string(rep.convexity.kind));
    }
    cells.resize(std::max(cells.size(), fixed), "");
    cells.resize(total - 1, "");
    std::string joined;
    for (const auto& v : row.violations) joined += (joined.empty() ? "" : ";") + v;
    cells.push_back(joined);
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
    out << '\n';
  }
}

json rows_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json j;
    j["index"] = row.index;
    j["a"] = row.point.a;
    j["masses"] = row.point.masses;
    j["status"] = row.status;
    if (!row.error.empty()) j["error"] = row.error;
    j["accepted_count"] = row.accepted_count;
    j["spurious_count"] = row.spurious_count;
    j["solution"] = row.solution ? solution_json(*row.solution) : json(nullptr);
    j["analysis"] = row.report ? analysis_json(*row.report) : json(nullptr);
    j["violations"] = row.violations;
    out.push_back(std::move(j));
  }
  return out;
}

void write_plot_data(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "index,mass_gap,distance_asymmetry,delta_gap\n";
  for (const auto& row : rows) {
    if (!row.report) continue;
    const auto& m = row.point.masses;
    const auto& c = row.report->symmetry.checks.at(0);
    out << row.index << ',' << format_real((m[1] - m[0]) / (m[1] + m[0])) << ',' << format_real(c.distance_asymmetry)
        << ',' << format_real(c.delta_gap) << '\n';
  }
}

}  // namespace centralcfg::cli
