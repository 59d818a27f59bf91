#include "centralcfg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "centralcfg/errors.hpp"

namespace centralcfg::geometry {

SquaredDistanceMatrix squared_distances(const Configuration& config, double coincidence_eps) {
  const auto& p = config.matrix();
  const Eigen::Index n = p.rows();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d2 = (p.row(i) - p.row(j)).squaredNorm();
      if (d2 <= coincidence_eps) {
        throw CoincidentPoints(static_cast<int>(i) + 1, static_cast<int>(j) + 1, d2);
      }
      s(i, j) = d2;
      s(j, i) = d2;
    }
  }
  return SquaredDistanceMatrix(s);
}

Eigen::VectorXd center_of_mass(const Configuration& config, const MassVector& masses) {
  if (config.size() != masses.size()) {
    throw DimensionMismatch("configuration has " + std::to_string(config.size()) + " points but " +
                            std::to_string(masses.size()) + " masses were given");
  }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(config.dim());
  for (std::size_t i = 0; i < config.size(); ++i) g += masses[i] * config.point(i);
  return g / masses.total();
}

double cayley_menger(const SquaredDistanceMatrix& s, std::span<const int> subset) {
  const int n = static_cast<int>(s.size());
  const int k = static_cast<int>(subset.size());
  if (k < 3 || k > n) throw InvalidInput("Cayley-Menger subset must have 3..n indices");
  std::vector<int> seen(subset.begin(), subset.end());
  std::sort(seen.begin(), seen.end());
  if (seen.front() < 0 || seen.back() >= n || std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw InvalidInput("Cayley-Menger subset indices must be distinct and in range");
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Ones(k + 1, k + 1);
  b(0, 0) = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) b(i + 1, j + 1) = s(subset[i], subset[j]);
  }
  return b.fullPivLu().determinant();
}

double cayley_menger_relative(const SquaredDistanceMatrix& s) {
  std::vector<int> all(s.size());
  std::iota(all.begin(), all.end(), 0);
  const double scale = std::pow(s.max_entry(), static_cast<double>(s.size()) - 1.0);
  return std::abs(cayley_menger(s, all)) / scale;
}

Eigen::MatrixXd align_axes(const Eigen::MatrixXd& centered) {
  const Eigen::Index n = centered.rows();
  const Eigen::Index d = centered.cols();
  const double scale = std::max(centered.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<Eigen::VectorXd> basis;
  auto try_add = [&](Eigen::VectorXd r) {
    for (const auto& b : basis) r -= r.dot(b) * b;
    // second pass keeps the frame orthonormal to rounding
    for (const auto& b : basis) r -= r.dot(b) * b;
    const double norm = r.norm();
    if (norm > 1e-10 * scale) basis.push_back(r / norm);
  };
  for (Eigen::Index i = 0; i < n && static_cast<Eigen::Index>(basis.size()) < d; ++i) {
    try_add(centered.row(i).transpose());
  }
  for (Eigen::Index k = 0; k < d && static_cast<Eigen::Index>(basis.size()) < d; ++k) {
    try_add(Eigen::VectorXd::Unit(d, k) * scale);
  }
  Eigen::MatrixXd frame(d, d);
  for (Eigen::Index k = 0; k < d; ++k) frame.col(k) = basis[static_cast<std::size_t>(k)];
  return centered * frame;
}

Configuration embed(const SquaredDistanceMatrix& s, int target_dim, const EmbedOptions& options) {
  const Eigen::Index n = static_cast<Eigen::Index>(s.size());
  if (target_dim < 1) throw InvalidInput("target dimension must be >= 1");
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd gram = -0.5 * centering * s.matrix() * centering;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd& values = eig.eigenvalues();  // ascending
  const double largest = values(n - 1);
  const double tol = options.rank_tolerance * std::max(largest, 0.0);

  int significant = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (values(k) > tol) ++significant;
  }
  const int excess = std::max(0, significant - target_dim);
  if (values(0) < -tol || excess > 0) {
    throw NotRealizable(std::min(values(0), 0.0), excess,
                        "distances are not realizable in dimension " + std::to_string(target_dim) +
                            " (most negative Gram eigenvalue " + std::to_string(values(0)) +
                            ", excess rank " + std::to_string(excess) + ")");
  }

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, target_dim);
  for (int k = 0; k < target_dim && k < n; ++k) {
    const Eigen::Index idx = n - 1 - k;
    x.col(k) = eig.eigenvectors().col(idx) * std::sqrt(std::max(values(idx), 0.0));
  }
  x.rowwise() -= x.colwise().mean();
  return Configuration(align_axes(x));
}

std::vector<double> barycentric_coordinates(const Configuration& config) {
  const Eigen::Index n = static_cast<Eigen::Index>(config.size());
  const Eigen::Index d = config.dim();
  Eigen::MatrixXd centered = config.matrix();
  centered.rowwise() -= centered.colwise().mean();
  const double scale = std::max(centered.cwiseAbs().maxCoeff(), 1e-300);

  Eigen::MatrixXd system(d + 1, n);
  system.row(0).setOnes();
  system.bottomRows(d) = (centered / scale).transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > 1e-10 * sigma(0)) ++rank;
  }
  const Eigen::Index nullity = n - rank;
  if (nullity != 1) {
    throw WrongRank(static_cast<int>(nullity),
                    "barycentric system has a " + std::to_string(nullity) +
                        "-dimensional solution space; the configuration must span dimension n-2");
  }
  Eigen::VectorXd delta = svd.matrixV().col(n - 1);
  delta.normalize();
  const double big = delta.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(delta(i)) > 1e-8 * big) {
      if (delta(i) > 0.0) delta = -delta;
      break;
    }
  }
  return {delta.data(), delta.data() + n};
}

double simplex_volume(const Eigen::MatrixXd& vertices) {
  const Eigen::Index d = vertices.cols();
  if (vertices.rows() != d + 1) throw InvalidInput("a d-simplex needs d+1 vertices");
  Eigen::MatrixXd edges(d, d);
  for (Eigen::Index k = 0; k < d; ++k) edges.row(k) = vertices.row(k + 1) - vertices.row(0);
  double factorial = 1.0;
  for (Eigen::Index k = 2; k <= d; ++k) factorial *= static_cast<double>(k);
  return edges.determinant() / factorial;
}

std::vector<double> OrientedVolumes::as_deltas() const {
  const std::size_t n = values.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = ((n - 1 - i) % 2 == 0) ? values[i] : -values[i];
  return out;
}

OrientedVolumes oriented_volumes(const Configuration& config) {
  const Eigen::Index n = static_cast<Eigen::Index>(config.size());
  const Eigen::Index d = config.dim();
  if (d != n - 2) {
    throw DimensionMismatch("oriented volumes need dimension n-2 = " + std::to_string(n - 2) +
                            ", got " + std::to_string(d));
  }
  OrientedVolumes out;
  out.values.resize(static_cast<std::size_t>(n));
  Eigen::MatrixXd face(n - 1, d);
  for (Eigen::Index omit = 0; omit < n; ++omit) {
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != omit) face.row(row++) = config.matrix().row(i);
    }
    out.values[static_cast<std::size_t>(omit)] = simplex_volume(face);
  }

  const std::vector<double> ray = barycentric_coordinates(config);
  const std::vector<double> signed_volumes = out.as_deltas();
  double dot = 0.0;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < ray.size(); ++i) {
    dot += signed_volumes[i] * ray[i];
    norm2 += ray[i] * ray[i];
  }
  out.kappa = dot / norm2;
  double worst = 0.0;
  double biggest = 0.0;
  for (std::size_t i = 0; i < ray.size(); ++i) {
    worst = std::max(worst, std::abs(signed_volumes[i] - out.kappa * ray[i]));
    biggest = std::max(biggest, std::abs(out.values[i]));
  }
  out.proportionality_residual = biggest > 0.0 ? worst / biggest : 0.0;
  return out;
}

double distance_to_affine_hull(const Eigen::VectorXd& point, const Eigen::MatrixXd& support) {
  if (support.rows() == 0 || support.cols() != point.size()) {
    throw DimensionMismatch("affine hull support does not match point dimension");
  }
  const Eigen::VectorXd origin = support.row(0).transpose();
  const Eigen::VectorXd offset = point - origin;
  if (support.rows() == 1) return offset.norm();
  Eigen::MatrixXd span(support.cols(), support.rows() - 1);
  for (Eigen::Index k = 1; k < support.rows(); ++k) span.col(k - 1) = (support.row(k) - support.row(0)).transpose();
  const Eigen::VectorXd coeffs = span.colPivHouseholderQr().solve(offset);
  return (offset - span * coeffs).norm();
}

}  // namespace centralcfg::geometry
