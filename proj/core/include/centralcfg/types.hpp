#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace centralcfg {

/// Positive masses m_1..m_n together with their total M.
class MassVector {
 public:
  /// Throws InvalidInput unless n >= 3 and every mass is finite and > 0.
  explicit MassVector(std::vector<double> masses);

  std::size_t size() const { return masses_.size(); }
  double operator[](std::size_t i) const { return masses_[i]; }
  double total() const { return total_; }
  std::span<const double> values() const { return masses_; }

 private:
  std::vector<double> masses_;
  double total_ = 0.0;
};

/// n labeled points in R^d, stored one point per row.
class Configuration {
 public:
  explicit Configuration(Eigen::MatrixXd points);
  Configuration(const std::vector<std::vector<double>>& points);

  std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  Eigen::VectorXd point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)).transpose(); }
  const Eigen::MatrixXd& matrix() const { return points_; }

  Configuration translated(const Eigen::VectorXd& v) const;
  Configuration scaled(double c) const;
  /// Largest mutual distance.
  double diameter() const;

 private:
  Eigen::MatrixXd points_;
};

/// Symmetric matrix of squared mutual distances s_ij with zero diagonal and
/// strictly positive off-diagonal entries.
class SquaredDistanceMatrix {
 public:
  /// Validates shape, symmetry (1e-12 relative) and positivity; symmetrizes.
  explicit SquaredDistanceMatrix(const Eigen::MatrixXd& entries);

  std::size_t size() const { return static_cast<std::size_t>(s_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return s_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& matrix() const { return s_; }
  double max_entry() const { return s_.maxCoeff(); }

 private:
  Eigen::MatrixXd s_;
};

/// Power-law exponent a of S_ij = s_ij^a, with alpha = 1/a.
class Exponent {
 public:
  /// a < 0 is the regime where the symmetry theorems hold. a > 0 is accepted
  /// only with allow_positive, and carries no guarantee.
  explicit Exponent(double a, bool allow_positive = false);

  double a() const { return a_; }
  double alpha() const { return alpha_; }
  bool theorem_regime() const { return a_ < 0.0; }

 private:
  double a_;
  double alpha_;
};

/// Homogeneous barycentric coordinates Δ with ΣΔ = 0, normalized by the
/// λ = M distance map s_ij = (1 - Δ_iΔ_j/(m_i m_j))^(1/a).
class DziobekCoords {
 public:
  /// Throws InvalidInput for the zero vector or |ΣΔ| > 1e-12 * max(1, max|Δ|).
  explicit DziobekCoords(std::vector<double> deltas);

  std::size_t size() const { return deltas_.size(); }
  double operator[](std::size_t i) const { return deltas_[i]; }
  std::span<const double> values() const { return deltas_; }

 private:
  std::vector<double> deltas_;
};

/// Number of unordered pairs of n items.
inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

}  // namespace centralcfg
