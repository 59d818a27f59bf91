#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "centralcfg/dziobek.hpp"
#include "centralcfg/types.hpp"

namespace centralcfg::analysis {

/// Reflection exchanging one pair of particles and fixing the others:
/// for n = 4 the axis through the fixed pair, for n = 5 the plane through
/// the fixed triple. Indices are 0-based.
struct MirrorCheck {
  std::vector<int> mirrored;
  std::vector<int> fixed;
  /// max over fixed k of |s_ik - s_jk| / max(s_ik, s_jk), {i, j} = mirrored
  double distance_asymmetry = 0.0;
  /// |Δ_i - Δ_j| of the normalized coordinates
  double delta_gap = 0.0;
  bool symmetric = false;
};

struct SymmetryReport {
  /// n = 4: swap {1,2} fixing {3,4}, then swap {3,4} fixing {1,2}.
  /// n = 5: swap {1,2} fixing {3,4,5}.
  std::vector<MirrorCheck> checks;
  double tolerance = 1e-7;
};

/// Requires n in {4, 5}.
SymmetryReport symmetry_report(const dziobek::CCSolution& sol, double tolerance = 1e-7);

/// Signs comparing particle 1 against particle 2 (-1, 0 or +1).
struct OrderingReport {
  int mass_order = 0;
  /// sign of |Δ_{1,3..n}| - |Δ_{2,3..n}|, the volumes omitting 2 and 1
  int area_order = 0;
  /// sign of dist(q1, hull(q3..qn)) - dist(q2, hull(q3..qn))
  int height_order = 0;
  /// sign of s_1k - s_2k for k = 3..n
  std::vector<int> distance_orders;
  /// Relative mismatch of |Δ_{1,3..n}| / |Δ_{2,3..n}| against the height ratio.
  double area_height_gap = 0.0;
  /// Every sign equals mass_order.
  bool consistent = false;
};

/// Differences below tolerance (relative to the compared magnitudes) count as
/// sign 0. Requires n in {4, 5} and positions of dimension n - 2.
OrderingReport ordering_report(const dziobek::CCSolution& sol, double tolerance = 1e-7);

/// |m3 Δ123 (S13 - S23) + m4 Δ124 (S14 - S24)| over the larger summand plus
/// 1e-6 times the sum of summand scales m_k |Δ12k| (S1k + S2k). n = 4 only.
double routh_residual(const Configuration& config, const MassVector& masses, const Exponent& exponent);
double routh_residual(const dziobek::CCSolution& sol);

/// Max pairwise gap among (S12 - c)(S34 - c), (S13 - c)(S24 - c),
/// (S14 - c)(S23 - c), relative to their mean magnitude. n = 4 only.
double product_relation_residual(const SquaredDistanceMatrix& s, const Exponent& exponent, double lambda_over_M);
double product_relation_residual(const dziobek::CCSolution& sol);

enum class ConvexityKind { convex_diagonal, convex_other, nonconvex, degenerate };

struct ConvexityClass {
  ConvexityKind kind = ConvexityKind::degenerate;
  std::vector<int> negative_indices;
  /// The diagonal pair (convex_diagonal), the interior particle
  /// (nonconvex) or the zero entries (degenerate).
  std::vector<int> special;
};

/// Classifies by the sign pattern of Δ, which is defined up to a global
/// sign: the minority sign class decides. One entry: nonconvex with that
/// particle inside; two: convex with that pair as diagonal (for a 2-2 split
/// the negative pair is reported); more: convex_other. Entries with
/// |Δ_i| <= zero_tolerance * max|Δ| make the class degenerate.
ConvexityClass convexity_class(std::span<const double> deltas, double zero_tolerance = 1e-12);

std::string to_string(ConvexityKind kind);

struct AnalysisReport {
  SymmetryReport symmetry;
  std::optional<OrderingReport> ordering;
  std::optional<double> routh_residual;
  std::optional<double> product_residual;
  ConvexityClass convexity;
};

/// Everything above that applies to `sol`: ordering for convex solutions,
/// Routh and product residuals for n = 4.
AnalysisReport analyze(const dziobek::CCSolution& sol, double tolerance = 1e-7);

}  // namespace centralcfg::analysis
