#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "centralcfg/types.hpp"

namespace centralcfg::geometry {

/// Exact squared Euclidean distances. Throws CoincidentPoints when an
/// off-diagonal entry is <= coincidence_eps.
SquaredDistanceMatrix squared_distances(const Configuration& config, double coincidence_eps = 1e-24);

/// Barycenter q_G = (1/M) Σ m_i q_i.
Eigen::VectorXd center_of_mass(const Configuration& config, const MassVector& masses);

/// Cayley–Menger determinant of the bordered (k+1)x(k+1) matrix over `subset`
/// (0-based indices, 3 <= k <= n). For a tetrahedron it equals 288 V^2, for
/// a triangle -16 A^2.
double cayley_menger(const SquaredDistanceMatrix& s, std::span<const int> subset);

/// Cayley–Menger determinant of all n points divided by (max s)^(n-1); zero
/// iff the points fit in dimension n-2.
double cayley_menger_relative(const SquaredDistanceMatrix& s);

struct EmbedOptions {
  /// Eigenvalues of the Gram matrix below rank_tolerance * largest are zero.
  double rank_tolerance = 1e-9;
};

/// Classical multidimensional scaling. The result is centered at the
/// centroid and rotated so that the first point lies on the positive first
/// axis, the next independent point has positive second coordinate, and so on.
/// Throws NotRealizable when the Gram matrix has a significantly negative
/// eigenvalue or more than target_dim significant positive ones.
Configuration embed(const SquaredDistanceMatrix& s, int target_dim, const EmbedOptions& options = {});

/// Deterministic rotation gauge used by embed(): centered points are rotated
/// so the Gram–Schmidt frame of the points taken in label order becomes the
/// coordinate frame.
Eigen::MatrixXd align_axes(const Eigen::MatrixXd& centered);

/// Nonzero Δ with ΣΔ_i = 0 and ΣΔ_i q_i = 0, unit norm, sign chosen so the
/// first entry of significant magnitude is negative. Throws WrongRank if the
/// solution space is not one-dimensional.
std::vector<double> barycentric_coordinates(const Configuration& config);

struct OrientedVolumes {
  /// values[i] is the signed volume of the simplex of all points except i,
  /// remaining points in increasing label order.
  std::vector<double> values;
  /// (-1)^(n-1-i) values[i] = kappa * barycentric_coordinates(config)[i].
  double kappa = 0.0;
  /// Max deviation of the proportionality above, relative to max |values|.
  double proportionality_residual = 0.0;

  /// The volumes with the alternating sign that makes them proportional to Δ.
  std::vector<double> as_deltas() const;
};

/// Signed (n-2)-simplex volumes; requires dim == n - 2.
OrientedVolumes oriented_volumes(const Configuration& config);

/// Signed volume of the simplex spanned by `vertices` (rows), which must
/// number dim + 1.
double simplex_volume(const Eigen::MatrixXd& vertices);

/// Distance from `point` to the affine hull of `support` rows.
double distance_to_affine_hull(const Eigen::VectorXd& point, const Eigen::MatrixXd& support);

}  // namespace centralcfg::geometry
