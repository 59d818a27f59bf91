#include "centralcfg/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "centralcfg/errors.hpp"

namespace centralcfg {

MassVector::MassVector(std::vector<double> masses) : masses_(std::move(masses)) {
  if (masses_.size() < 3) {
    throw InvalidInput("at least 3 masses are required, got " + std::to_string(masses_.size()));
  }
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (!std::isfinite(masses_[i]) || masses_[i] <= 0.0) {
      throw InvalidInput("masses must be positive (m" + std::to_string(i + 1) + " = " +
                         std::to_string(masses_[i]) + ")");
    }
  }
  total_ = std::accumulate(masses_.begin(), masses_.end(), 0.0);
}

Configuration::Configuration(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.rows() == 0 || points_.cols() == 0) {
    throw InvalidInput("configuration needs at least one point of dimension >= 1");
  }
  if (!points_.allFinite()) throw InvalidInput("configuration has non-finite coordinates");
}

namespace {

Eigen::MatrixXd rows_to_matrix(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw InvalidInput("configuration needs at least one point");
  const std::size_t d = points.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d) {
      throw DimensionMismatch("point " + std::to_string(i + 1) + " has dimension " +
                              std::to_string(points[i].size()) + ", expected " + std::to_string(d));
    }
    for (std::size_t k = 0; k < d; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = points[i][k];
    }
  }
  return m;
}

}  // namespace

Configuration::Configuration(const std::vector<std::vector<double>>& points)
    : Configuration(rows_to_matrix(points)) {}

Configuration Configuration::translated(const Eigen::VectorXd& v) const {
  if (v.size() != points_.cols()) throw DimensionMismatch("translation has wrong dimension");
  Eigen::MatrixXd p = points_;
  p.rowwise() += v.transpose();
  return Configuration(std::move(p));
}

Configuration Configuration::scaled(double c) const { return Configuration(points_ * c); }

double Configuration::diameter() const {
  double best = 0.0;
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < points_.rows(); ++j) {
      best = std::max(best, (points_.row(i) - points_.row(j)).norm());
    }
  }
  return best;
}

SquaredDistanceMatrix::SquaredDistanceMatrix(const Eigen::MatrixXd& entries) : s_(entries) {
  const Eigen::Index n = s_.rows();
  if (n < 2 || s_.cols() != n) throw InvalidInput("squared-distance matrix must be square, n >= 2");
  if (!s_.allFinite()) throw InvalidInput("squared-distance matrix has non-finite entries");
  const double scale = std::max(1.0, s_.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(s_(i, i)) > 1e-12 * scale) {
      throw InvalidInput("squared-distance matrix must have a zero diagonal");
    }
    s_(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(s_(i, j) - s_(j, i)) > 1e-12 * scale) {
        throw InvalidInput("squared-distance matrix must be symmetric");
      }
      if (!(s_(i, j) > 0.0)) {
        throw CoincidentPoints(static_cast<int>(i) + 1, static_cast<int>(j) + 1, s_(i, j));
      }
      const double v = 0.5 * (s_(i, j) + s_(j, i));
      s_(i, j) = v;
      s_(j, i) = v;
    }
  }
}

Exponent::Exponent(double a, bool allow_positive) : a_(a), alpha_(1.0 / a) {
  if (!std::isfinite(a) || a == 0.0) throw InvalidInput("exponent a must be finite and nonzero");
  if (a > 0.0 && !allow_positive) {
    throw InvalidInput("exponent a > 0 is outside the theorem regime; pass allow_positive to evaluate");
  }
}

DziobekCoords::DziobekCoords(std::vector<double> deltas) : deltas_(std::move(deltas)) {
  if (deltas_.size() < 3) throw InvalidInput("need at least 3 barycentric coordinates");
  double sum = 0.0;
  double largest = 0.0;
  for (double d : deltas_) {
    if (!std::isfinite(d)) throw InvalidInput("barycentric coordinates must be finite");
    sum += d;
    largest = std::max(largest, std::abs(d));
  }
  if (largest == 0.0) throw InvalidInput("barycentric coordinates must not all vanish");
  if (std::abs(sum) > 1e-12 * std::max(1.0, largest)) {
    throw InvalidInput("barycentric coordinates must sum to zero (sum = " + std::to_string(sum) + ")");
  }
}

}  // namespace centralcfg
