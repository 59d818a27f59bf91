#include <gtest/gtest.h>

#include <cmath>

#include "centralcfg/errors.hpp"
#include "centralcfg/geometry.hpp"
#include "oracles.hpp"

using namespace centralcfg;

namespace {

Configuration cfg(const oracle::Points& p) { return Configuration(p); }

// Diagonals [q1,q2] and [q3,q4].
Configuration unit_square() { return cfg({{0, 0}, {1, 1}, {1, 0}, {0, 1}}); }

Configuration regular_tetrahedron() {
  const double r = 1.0 / std::sqrt(8.0);
  return cfg({{r, r, r}, {r, -r, -r}, {-r, r, -r}, {-r, -r, r}});
}

Eigen::MatrixXd random_rotation(int dim, oracle::Rng& rng) {
  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = rng.uniform(-1, 1);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ();
}

Configuration random_configuration(int n, int dim, oracle::Rng& rng) {
  Eigen::MatrixXd p(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < dim; ++j) p(i, j) = rng.uniform(-2, 2);
  }
  return Configuration(p);
}

oracle::Points to_points(const Configuration& c) {
  oracle::Points pts;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Eigen::VectorXd v = c.point(i);
    pts.emplace_back(v.data(), v.data() + v.size());
  }
  return pts;
}

}  // namespace

TEST(SquaredDistances, UnitSquare) {
  const SquaredDistanceMatrix s = geometry::squared_distances(unit_square());
  EXPECT_DOUBLE_EQ(s(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(s(2, 3), 2.0);
  for (auto [i, j] : {std::pair{0, 2}, {0, 3}, {1, 2}, {1, 3}}) EXPECT_DOUBLE_EQ(s(i, j), 1.0);
  EXPECT_EQ(s(1, 1), 0.0);
}

TEST(SquaredDistances, EquilateralTriangle) {
  const SquaredDistanceMatrix s =
      geometry::squared_distances(cfg({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}));
  EXPECT_NEAR(s(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(s(0, 2), 1.0, 1e-15);
  EXPECT_NEAR(s(1, 2), 1.0, 1e-15);
}

TEST(SquaredDistances, CoincidentPointsRejected) {
  try {
    geometry::squared_distances(cfg({{0, 0}, {1, 0}, {1, 0}}));
    FAIL() << "expected CoincidentPoints";
  } catch (const CoincidentPoints& e) {
    // particle labels are 1-based
    EXPECT_EQ(e.first(), 2);
    EXPECT_EQ(e.second(), 3);
  }
}

TEST(SquaredDistanceMatrix, RejectsAsymmetryAndZeros) {
  Eigen::MatrixXd s(3, 3);
  s << 0, 1, 1, 2, 0, 1, 1, 1, 0;
  EXPECT_THROW(SquaredDistanceMatrix{s}, InvalidInput);
  s << 0, 0, 1, 0, 0, 1, 1, 1, 0;
  EXPECT_THROW(SquaredDistanceMatrix{s}, Error);
}

TEST(CenterOfMass, Examples) {
  const Eigen::VectorXd g = geometry::center_of_mass(unit_square(), MassVector({1, 1, 1, 1}));
  EXPECT_NEAR(g(0), 0.5, 1e-15);
  EXPECT_NEAR(g(1), 0.5, 1e-15);

  // mass 1 at x = 0 and mass 3 at x = 4 (split over two coincident-free points)
  const Eigen::VectorXd x =
      geometry::center_of_mass(cfg({{0.0, 0.0}, {4.0, 1.0}, {4.0, -1.0}}), MassVector({1, 1.5, 1.5}));
  EXPECT_NEAR(x(0), 3.0, 1e-15);
  EXPECT_NEAR(x(1), 0.0, 1e-15);

  const Eigen::VectorXd p = geometry::center_of_mass(cfg({{2, -1}, {2, -1}, {2, -1}}), MassVector({1, 2, 3}));
  EXPECT_NEAR(p(0), 2.0, 1e-15);
  EXPECT_NEAR(p(1), -1.0, 1e-15);
}

TEST(CenterOfMass, TranslationCovariantAndChecksShape) {
  oracle::Rng rng(11);
  const Configuration c = random_configuration(5, 3, rng);
  const MassVector m({1, 2, 3, 4, 5});
  Eigen::VectorXd v(3);
  v << 0.3, -1.2, 2.5;
  const Eigen::VectorXd shift = geometry::center_of_mass(c.translated(v), m) - geometry::center_of_mass(c, m);
  EXPECT_LT((shift - v).norm(), 1e-14);
  EXPECT_THROW(geometry::center_of_mass(c, MassVector({1, 2, 3})), DimensionMismatch);
}

TEST(CayleyMenger, SquareIsPlanar) {
  const SquaredDistanceMatrix s = geometry::squared_distances(unit_square());
  const std::vector<int> all{0, 1, 2, 3};
  EXPECT_NEAR(geometry::cayley_menger(s, all), 0.0, 1e-12);
}

TEST(CayleyMenger, RegularTetrahedron) {
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(4, 4) - Eigen::MatrixXd::Identity(4, 4);
  const std::vector<int> all{0, 1, 2, 3};
  // 288 V^2 with V^2 = 1/72
  EXPECT_NEAR(std::abs(geometry::cayley_menger(SquaredDistanceMatrix(ones), all)), 4.0, 1e-12);
  const SquaredDistanceMatrix s = geometry::squared_distances(regular_tetrahedron());
  EXPECT_NEAR(geometry::cayley_menger(s, all), oracle::cayley_menger(to_points(regular_tetrahedron())), 1e-12);
}

TEST(CayleyMenger, CollinearTripleVanishes) {
  const SquaredDistanceMatrix s = geometry::squared_distances(cfg({{0, 0}, {1, 1}, {3, 3}, {0, 1}}));
  const std::vector<int> line{0, 1, 2};
  EXPECT_NEAR(geometry::cayley_menger(s, line), 0.0, 1e-12);
  const std::vector<int> triangle{0, 1, 3};
  // -16 A^2 with A = 1/2
  EXPECT_NEAR(geometry::cayley_menger(s, triangle), -4.0, 1e-12);
}

TEST(CayleyMenger, RejectsBadSubsets) {
  const SquaredDistanceMatrix s = geometry::squared_distances(unit_square());
  const std::vector<int> pair{0, 1};
  const std::vector<int> repeated{0, 1, 1};
  const std::vector<int> out_of_range{0, 1, 7};
  EXPECT_THROW(geometry::cayley_menger(s, pair), InvalidInput);
  EXPECT_THROW(geometry::cayley_menger(s, repeated), InvalidInput);
  EXPECT_THROW(geometry::cayley_menger(s, out_of_range), InvalidInput);
}

TEST(CayleyMenger, MatchesOracleOnRandomTetrahedra) {
  oracle::Rng rng(3);
  const std::vector<int> all{0, 1, 2, 3};
  for (int trial = 0; trial < 50; ++trial) {
    const Configuration c = random_configuration(4, 3, rng);
    const double ours = geometry::cayley_menger(geometry::squared_distances(c), all);
    const double ref = oracle::cayley_menger(to_points(c));
    EXPECT_NEAR(ours, ref, 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Embed, SquareRoundTripAndGauge) {
  const SquaredDistanceMatrix s = geometry::squared_distances(unit_square());
  const Configuration c = geometry::embed(s, 2);
  EXPECT_EQ(c.dim(), 2);
  EXPECT_LT((geometry::squared_distances(c).matrix() - s.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(c.matrix().colwise().sum().norm(), 1e-14);
  EXPECT_GT(c.point(0)(0), 0.0);
  EXPECT_NEAR(c.point(0)(1), 0.0, 1e-15);
  // q2 = -q1 after centring, so q3 fixes the second axis
  EXPECT_NEAR(c.point(1)(1), 0.0, 1e-15);
  EXPECT_GT(c.point(2)(1), 0.0);
}

TEST(Embed, IsBitReproducible) {
  oracle::Rng rng(5);
  const SquaredDistanceMatrix s = geometry::squared_distances(random_configuration(5, 3, rng));
  EXPECT_EQ(geometry::embed(s, 3).matrix(), geometry::embed(s, 3).matrix());
}

TEST(Embed, TetrahedronNotRealizableInPlane) {
  const SquaredDistanceMatrix s = geometry::squared_distances(regular_tetrahedron());
  try {
    geometry::embed(s, 2);
    FAIL() << "expected NotRealizable";
  } catch (const NotRealizable& e) {
    EXPECT_EQ(e.excess_rank(), 1);
  }
}

TEST(Embed, InflatedSquareDiagonalNotRealizable) {
  Eigen::MatrixXd s = geometry::squared_distances(unit_square()).matrix();
  s(0, 1) = s(1, 0) = 2.2;
  // Gram matrix of the double-centred data, computed directly
  const Eigen::MatrixXd j = Eigen::MatrixXd::Identity(4, 4) - Eigen::MatrixXd::Constant(4, 4, 0.25);
  const Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(-0.5 * j * s * j).eigenvalues();
  ASSERT_LT(eig(0), -1e-3);
  try {
    geometry::embed(SquaredDistanceMatrix(s), 2);
    FAIL() << "expected NotRealizable";
  } catch (const NotRealizable& e) {
    EXPECT_NEAR(e.most_negative_eigenvalue(), eig(0), 1e-12);
  }
}

TEST(Embed, RoundTripOnRandomConfigurations) {
  oracle::Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = trial % 2 == 0 ? 2 : 3;
    const SquaredDistanceMatrix s = geometry::squared_distances(random_configuration(dim + 2, dim, rng));
    const SquaredDistanceMatrix back = geometry::squared_distances(geometry::embed(s, dim));
    const double rel = ((back.matrix() - s.matrix()).array().abs() / (s.matrix().array() + 1e-300)).maxCoeff();
    EXPECT_LT(rel, 1e-10);
  }
}

TEST(BarycentricCoordinates, SquareAndCentroid) {
  const std::vector<double> d = geometry::barycentric_coordinates(unit_square());
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(d[i], i < 2 ? -0.5 : 0.5, 1e-14);

  const double h = std::sqrt(3.0) / 2;
  const std::vector<double> t =
      geometry::barycentric_coordinates(cfg({{0, 0}, {1, 0}, {0.5, h}, {0.5, h / 3}}));
  const double norm = std::sqrt(12.0);
  EXPECT_NEAR(t[0], -1 / norm, 1e-14);
  EXPECT_NEAR(t[1], -1 / norm, 1e-14);
  EXPECT_NEAR(t[2], -1 / norm, 1e-14);
  EXPECT_NEAR(t[3], 3 / norm, 1e-14);
}

TEST(BarycentricCoordinates, CollinearPointsHaveWrongRank) {
  EXPECT_THROW(geometry::barycentric_coordinates(cfg({{0, 0}, {1, 1}, {2, 2}, {5, 5}})), WrongRank);
}

TEST(BarycentricCoordinates, SatisfiesDefiningSystem) {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + trial % 2;
    const Configuration c = random_configuration(dim + 2, dim, rng);
    const std::vector<double> d = geometry::barycentric_coordinates(c);
    double sum = 0.0;
    Eigen::VectorXd moment = Eigen::VectorXd::Zero(dim);
    for (std::size_t i = 0; i < c.size(); ++i) {
      sum += d[i];
      moment += d[i] * c.point(i);
    }
    EXPECT_LT(std::abs(sum), 1e-13);
    EXPECT_LT(moment.norm(), 1e-12);
  }
}

TEST(OrientedVolumes, SquareAreas) {
  const geometry::OrientedVolumes v = geometry::oriented_volumes(unit_square());
  for (double a : v.values) EXPECT_NEAR(std::abs(a), 0.5, 1e-15);
  EXPECT_LT(v.proportionality_residual, 1e-14);
}

TEST(OrientedVolumes, MatchOracleTriangleAreas) {
  oracle::Rng rng(29);
  const Configuration c = random_configuration(4, 2, rng);
  const oracle::Points p = to_points(c);
  const geometry::OrientedVolumes v = geometry::oriented_volumes(c);
  EXPECT_NEAR(v.values[0], oracle::triangle_area(p[1], p[2], p[3]), 1e-13);
  EXPECT_NEAR(v.values[1], oracle::triangle_area(p[0], p[2], p[3]), 1e-13);
  EXPECT_NEAR(v.values[2], oracle::triangle_area(p[0], p[1], p[3]), 1e-13);
  EXPECT_NEAR(v.values[3], oracle::triangle_area(p[0], p[1], p[2]), 1e-13);
}

TEST(OrientedVolumes, InteriorPointFlipsPattern) {
  const double h = std::sqrt(3.0) / 2;
  const Configuration inside = cfg({{0.5, h / 3}, {0, 0}, {1, 0}, {0.5, h}});
  const std::vector<double> d = geometry::oriented_volumes(inside).as_deltas();
  int negatives = 0;
  for (double x : d) negatives += x < 0.0;
  // one sign class holds a single particle, the interior one
  EXPECT_TRUE(negatives == 1 || negatives == 3);
  EXPECT_TRUE((d[0] < 0.0) != (d[1] < 0.0));
  const std::vector<double> sq = geometry::oriented_volumes(unit_square()).as_deltas();
  int sq_negatives = 0;
  for (double x : sq) sq_negatives += x < 0.0;
  EXPECT_EQ(sq_negatives, 2);
}

TEST(OrientedVolumes, ProportionalToBarycentricRay) {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 2;
    const Configuration c = random_configuration(dim + 2, dim, rng);
    const geometry::OrientedVolumes v = geometry::oriented_volumes(c);
    const std::vector<double> d = geometry::barycentric_coordinates(c);
    const std::vector<double> scaled = v.as_deltas();
    // fit κ independently
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      num += scaled[i] * d[i];
      den += d[i] * d[i];
    }
    const double kappa = num / den;
    EXPECT_NEAR(kappa, v.kappa, 1e-12 * std::abs(kappa));
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(scaled[i], kappa * d[i], 1e-12);
  }
}

TEST(OrientedVolumes, RequiresCodimensionTwo) {
  EXPECT_THROW(geometry::oriented_volumes(regular_tetrahedron()), DimensionMismatch);
}

TEST(GeometryInvariants, IsometryInvariance) {
  oracle::Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 2;
    const Configuration c = random_configuration(dim + 2, dim, rng);
    const Eigen::MatrixXd r = random_rotation(dim, rng);
    Eigen::MatrixXd moved = c.matrix() * r.transpose();
    for (int j = 0; j < dim; ++j) moved.col(j).array() += rng.uniform(-5, 5);
    const Configuration c2(moved);
    const std::vector<double> d1 = geometry::barycentric_coordinates(c);
    const std::vector<double> d2 = geometry::barycentric_coordinates(c2);
    const std::vector<double> v1 = geometry::oriented_volumes(c).values;
    const std::vector<double> v2 = geometry::oriented_volumes(c2).values;
    for (std::size_t i = 0; i < d1.size(); ++i) {
      EXPECT_NEAR(d1[i], d2[i], 1e-10);
      EXPECT_NEAR(std::abs(v1[i]), std::abs(v2[i]), 1e-10);
    }
  }
}

TEST(GeometryInvariants, PlanarCayleyMengerVanishes) {
  oracle::Rng rng(41);
  const std::vector<int> all{0, 1, 2, 3};
  for (int trial = 0; trial < 50; ++trial) {
    const SquaredDistanceMatrix s = geometry::squared_distances(random_configuration(4, 2, rng));
    const double scale = std::pow(s.max_entry(), 3);
    EXPECT_LT(std::abs(geometry::cayley_menger(s, all)) / scale, 1e-10);
    EXPECT_LT(std::abs(geometry::cayley_menger_relative(s)), 1e-10);
  }
}

TEST(GeometryInvariants, WeightedSquaredDistanceSumIsConstant) {
  oracle::Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 2;
    const Configuration c = random_configuration(dim + 2, dim, rng);
    const std::vector<double> d = geometry::barycentric_coordinates(c);
    const oracle::Points p = to_points(c);
    double lo = 1e300;
    double hi = -1e300;
    for (int k = 0; k < 10; ++k) {
      std::vector<double> q(dim);
      for (double& x : q) x = rng.uniform(-10, 10);
      double sum = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) sum += d[i] * oracle::dist2(q, p[i]);
      lo = std::min(lo, sum);
      hi = std::max(hi, sum);
    }
    EXPECT_LT(hi - lo, 1e-10);
  }
}
