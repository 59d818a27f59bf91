#include "centralcfg/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "centralcfg/errors.hpp"
#include "centralcfg/geometry.hpp"

namespace centralcfg::analysis {

namespace {

int sign_with_tolerance(double difference, double scale, double tolerance) {
  if (std::abs(difference) <= tolerance * scale) return 0;
  return difference > 0.0 ? 1 : -1;
}

void require_four_or_five(std::size_t n) {
  if (n != 4 && n != 5) throw InvalidInput("symmetry and ordering reports need n = 4 or 5, got " + std::to_string(n));
}

void require_four(std::size_t n) {
  if (n != 4) throw InvalidInput("Routh and product relations need n = 4, got " + std::to_string(n));
}

MirrorCheck mirror_check(const dziobek::CCSolution& sol, int i, int j, double tolerance) {
  MirrorCheck check;
  check.mirrored = {i, j};
  const std::size_t n = sol.masses.size();
  const auto a = static_cast<std::size_t>(i);
  const auto b = static_cast<std::size_t>(j);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == a || k == b) continue;
    check.fixed.push_back(static_cast<int>(k));
    const double sa = sol.distances(a, k);
    const double sb = sol.distances(b, k);
    check.distance_asymmetry = std::max(check.distance_asymmetry, std::abs(sa - sb) / std::max(sa, sb));
  }
  check.delta_gap = std::abs(sol.deltas[a] - sol.deltas[b]);
  check.symmetric = check.distance_asymmetry < tolerance && check.delta_gap < tolerance;
  return check;
}

}  // namespace

SymmetryReport symmetry_report(const dziobek::CCSolution& sol, double tolerance) {
  const std::size_t n = sol.masses.size();
  require_four_or_five(n);
  SymmetryReport report;
  report.tolerance = tolerance;
  report.checks.push_back(mirror_check(sol, 0, 1, tolerance));
  if (n == 4) report.checks.push_back(mirror_check(sol, 2, 3, tolerance));
  return report;
}

OrderingReport ordering_report(const dziobek::CCSolution& sol, double tolerance) {
  const std::size_t n = sol.masses.size();
  require_four_or_five(n);
  const Configuration& q = sol.positions;
  if (q.dim() != static_cast<int>(n) - 2) throw DimensionMismatch("ordering report needs positions in dimension n-2");

  OrderingReport report;
  const double m1 = sol.masses[0];
  const double m2 = sol.masses[1];
  report.mass_order = sign_with_tolerance(m1 - m2, m1 + m2, tolerance);

  const geometry::OrientedVolumes volumes = geometry::oriented_volumes(q);
  const double without2 = std::abs(volumes.values[1]);
  const double without1 = std::abs(volumes.values[0]);
  report.area_order = sign_with_tolerance(without2 - without1, std::max(without1, without2), tolerance);

  const Eigen::MatrixXd base = q.matrix().bottomRows(static_cast<Eigen::Index>(n - 2));
  const double h1 = geometry::distance_to_affine_hull(q.point(0), base);
  const double h2 = geometry::distance_to_affine_hull(q.point(1), base);
  report.height_order = sign_with_tolerance(h1 - h2, std::max(h1, h2), tolerance);
  // common base, so the volume ratio equals the height ratio
  const double area_ratio = without2 / without1;
  const double height_ratio = h1 / h2;
  report.area_height_gap = std::abs(area_ratio - height_ratio) / std::max(area_ratio, height_ratio);

  for (std::size_t k = 2; k < n; ++k) {
    const double s1 = sol.distances(0, k);
    const double s2 = sol.distances(1, k);
    report.distance_orders.push_back(sign_with_tolerance(s1 - s2, std::max(s1, s2), tolerance));
  }
  report.consistent = report.area_order == report.mass_order && report.height_order == report.mass_order &&
                      std::all_of(report.distance_orders.begin(), report.distance_orders.end(),
                                  [&](int s) { return s == report.mass_order; });
  return report;
}

double routh_residual(const Configuration& config, const MassVector& masses, const Exponent& exponent) {
  require_four(masses.size());
  if (config.size() != 4 || config.dim() != 2) throw DimensionMismatch("Routh relation needs four planar points");
  const SquaredDistanceMatrix s = geometry::squared_distances(config);
  const auto S = [&](std::size_t i, std::size_t j) { return std::pow(s(i, j), exponent.a()); };
  Eigen::MatrixXd triangle(3, 2);
  double lhs = 0.0;
  double largest = 0.0;
  double scale = 0.0;
  for (std::size_t k = 2; k < 4; ++k) {
    triangle.row(0) = config.matrix().row(0);
    triangle.row(1) = config.matrix().row(1);
    triangle.row(2) = config.matrix().row(static_cast<Eigen::Index>(k));
    const double area = geometry::simplex_volume(triangle);  // Δ_12k
    const double term = masses[k] * area * (S(0, k) - S(1, k));
    lhs += term;
    largest = std::max(largest, std::abs(term));
    scale += masses[k] * std::abs(area) * (S(0, k) + S(1, k));
  }
  // Both summands vanish for symmetric solutions, leaving only rounding;
  // the floor keeps the ratio meaningful there.
  return std::abs(lhs) / (largest + 1e-6 * scale);
}

double routh_residual(const dziobek::CCSolution& sol) {
  return routh_residual(sol.positions, sol.masses, sol.exponent);
}

double product_relation_residual(const SquaredDistanceMatrix& s, const Exponent& exponent, double lambda_over_M) {
  require_four(s.size());
  const auto shifted = [&](std::size_t i, std::size_t j) { return std::pow(s(i, j), exponent.a()) - lambda_over_M; };
  const double products[3] = {shifted(0, 1) * shifted(2, 3), shifted(0, 2) * shifted(1, 3),
                              shifted(0, 3) * shifted(1, 2)};
  double gap = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) gap = std::max(gap, std::abs(products[i] - products[j]));
  }
  const double mean = (std::abs(products[0]) + std::abs(products[1]) + std::abs(products[2])) / 3.0;
  return mean > 0.0 ? gap / mean : 0.0;
}

double product_relation_residual(const dziobek::CCSolution& sol) {
  return product_relation_residual(sol.distances, sol.exponent, sol.lambda_over_M);
}

ConvexityClass convexity_class(std::span<const double> deltas, double zero_tolerance) {
  ConvexityClass out;
  double biggest = 0.0;
  for (double d : deltas) biggest = std::max(biggest, std::abs(d));
  std::vector<int> positive;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const int idx = static_cast<int>(i);
    if (std::abs(deltas[i]) <= zero_tolerance * biggest) {
      out.special.push_back(idx);
    } else if (deltas[i] < 0.0) {
      out.negative_indices.push_back(idx);
    } else {
      positive.push_back(idx);
    }
  }
  if (!out.special.empty() || biggest == 0.0) {
    out.kind = ConvexityKind::degenerate;
    return out;
  }
  const std::vector<int>& minority =
      out.negative_indices.size() <= positive.size() ? out.negative_indices : positive;
  if (minority.size() == 1) {
    out.kind = ConvexityKind::nonconvex;
    out.special = minority;
  } else if (minority.size() == 2) {
    out.kind = ConvexityKind::convex_diagonal;
    out.special = minority;
  } else {
    out.kind = ConvexityKind::convex_other;
  }
  return out;
}

std::string to_string(ConvexityKind kind) {
  switch (kind) {
    case ConvexityKind::convex_diagonal:
      return "convex_diagonal";
    case ConvexityKind::convex_other:
      return "convex_other";
    case ConvexityKind::nonconvex:
      return "nonconvex";
    case ConvexityKind::degenerate:
      return "degenerate";
  }
  return "degenerate";
}

AnalysisReport analyze(const dziobek::CCSolution& sol, double tolerance) {
  AnalysisReport report;
  report.convexity = convexity_class(sol.deltas.values());
  const std::size_t n = sol.masses.size();
  if (n == 4 || n == 5) {
    report.symmetry = symmetry_report(sol, tolerance);
    if (report.convexity.kind == ConvexityKind::convex_diagonal) report.ordering = ordering_report(sol, tolerance);
  }
  if (n == 4) {
    report.routh_residual = routh_residual(sol);
    report.product_residual = product_relation_residual(sol);
  }
  return report;
}

}  // namespace centralcfg::analysis
