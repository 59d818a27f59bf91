#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "centralcfg/analysis.hpp"
#include "centralcfg/direct.hpp"
#include "centralcfg/dziobek.hpp"
#include "centralcfg/errors.hpp"
#include "centralcfg/geometry.hpp"
#include "centralcfg/lemmas.hpp"
#include "oracles.hpp"

using namespace centralcfg;

namespace {

constexpr double kExponents[] = {-1.5, -1.0, -0.5};

std::vector<int> convex_pattern(std::size_t n) {
  std::vector<int> p(n, 1);
  p[0] = p[1] = -1;
  return p;
}

std::vector<dziobek::CCSolution> accepted(const std::vector<double>& m, double a, std::uint64_t seed) {
  dziobek::SolverOptions options;
  options.starts = 8;
  options.seed = seed;
  return dziobek::solve_all(MassVector(m), Exponent(a), convex_pattern(m.size()), options).accepted;
}

std::vector<double> random_masses(oracle::Rng& rng, std::size_t n) {
  std::vector<double> m(n);
  for (double& x : m) x = rng.log_uniform(0.2, 5.0);
  return m;
}

}  // namespace

TEST(Properties, SymmetryIffEqualFirstMasses) {
  oracle::Rng rng(101);
  int checked = 0;
  for (int trial = 0; trial < 24; ++trial) {
    std::vector<double> m = random_masses(rng, 4);
    const bool equal = trial % 2 == 0;
    if (equal) {
      m[1] = m[0];
    } else if (std::abs(m[1] - m[0]) < 0.05 * std::max(m[0], m[1])) {
      m[1] = 1.1 * m[0];
    }
    const double a = kExponents[trial % 3];
    for (const auto& sol : accepted(m, a, static_cast<std::uint64_t>(trial))) {
      ++checked;
      const analysis::MirrorCheck c = analysis::symmetry_report(sol).checks[0];
      const bool masses_equal = std::abs(m[0] - m[1]) < 1e-7 * (m[0] + m[1]);
      EXPECT_EQ(c.symmetric, masses_equal) << "trial " << trial;
      if (!masses_equal) {
        EXPECT_GT(c.distance_asymmetry, 1e-4);
        EXPECT_GT(c.delta_gap, 1e-4);
      }
    }
  }
  EXPECT_GE(checked, 24);
}

TEST(Properties, OrderingChainIsConsistent) {
  oracle::Rng rng(102);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = trial % 5 == 4 ? 5 : 4;
    std::vector<double> m = random_masses(rng, n);
    const double a = rng.uniform(-3.0, -0.1);
    for (const auto& sol : accepted(m, a, static_cast<std::uint64_t>(trial))) {
      if (analysis::convexity_class(sol.deltas.values()).kind != analysis::ConvexityKind::convex_diagonal) continue;
      ++checked;
      const analysis::OrderingReport r = analysis::ordering_report(sol);
      EXPECT_TRUE(r.consistent) << "trial " << trial;
      EXPECT_EQ(r.mass_order, m[0] < m[1] ? -1 : 1);
      EXPECT_LT(r.area_height_gap, 1e-8);
    }
  }
  EXPECT_GE(checked, 20);
}

TEST(Properties, RouthAndProductHoldOnSolutionsOnly) {
  oracle::Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> m = random_masses(rng, 4);
    for (const auto& sol : accepted(m, kExponents[trial % 3], static_cast<std::uint64_t>(trial))) {
      EXPECT_LT(analysis::routh_residual(sol), 1e-8);
      EXPECT_LT(analysis::product_relation_residual(sol), 1e-9);

      Eigen::MatrixXd moved = sol.positions.matrix();
      for (Eigen::Index i = 0; i < moved.rows(); ++i) {
        for (Eigen::Index k = 0; k < moved.cols(); ++k) moved(i, k) += rng.uniform(-0.1, 0.1);
      }
      const Configuration perturbed(moved);
      const double lambda = direct::fit_lambda(perturbed, sol.masses, sol.exponent);
      EXPECT_GT(direct::cc_residual(perturbed, sol.masses, sol.exponent, lambda), 1e-3);
    }
  }
}

TEST(Properties, AcceptedSolutionsSatisfyEveryRelation) {
  oracle::Rng rng(104);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(trial % 2);
    const std::vector<double> m = random_masses(rng, n);
    const double a = rng.uniform(-3.0, -0.1);
    for (const auto& sol : accepted(m, a, static_cast<std::uint64_t>(trial))) {
      double sum = 0.0;
      for (double d : sol.deltas.values()) sum += d;
      EXPECT_NEAR(sum, 0.0, 1e-12);

      const dziobek::DziobekFit fit = dziobek::fit_lambda_mu(sol.distances, sol.deltas.values(), sol.masses, sol.exponent);
      EXPECT_LT(fit.max_residual, 1e-9);
      EXPECT_NEAR(fit.lambda_over_M, 1.0, 1e-9);
      EXPECT_NEAR(fit.mu, -1.0, 1e-9);

      for (double p : lemmas::lemma1_products(sol.deltas.values(), sol.masses)) EXPECT_GE(p, -1e-12);
      EXPECT_LT(direct::cc_residual(sol.positions, sol.masses, sol.exponent, sol.masses.total()), 1e-8);
      EXPECT_LT(sol.residuals.cayley_menger, 1e-8);

      // embedded distances reproduce the solved ones
      const SquaredDistanceMatrix measured = geometry::squared_distances(sol.positions);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          EXPECT_NEAR(measured(i, j), sol.distances(i, j), 1e-9 * sol.distances(i, j));
        }
      }
    }
  }
}

TEST(Properties, RelabelingPermutesSolutions) {
  oracle::Rng rng(105);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<double> m = random_masses(rng, 4);
    const double a = kExponents[trial % 3];
    const dziobek::CCSolution base =
        dziobek::solve_normalized(MassVector(m), Exponent(a), convex_pattern(4));
    // swapping the diagonals maps the pattern --++ to ++--, i.e. --++ up to sign
    const std::vector<double> swapped{m[2], m[3], m[0], m[1]};
    const dziobek::CCSolution other =
        dziobek::solve_normalized(MassVector(swapped), Exponent(a), convex_pattern(4));
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(other.deltas[i], -base.deltas[(i + 2) % 4], 1e-9) << "trial " << trial;
    }
  }
}

TEST(Properties, EmbeddingRoundTrip) {
  oracle::Rng rng(106);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 3;
    const int n = dim + 2 + trial % 2;
    oracle::Points p(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(dim)));
    for (auto& row : p) {
      for (double& x : row) x = rng.uniform(-3, 3);
    }
    const SquaredDistanceMatrix s = geometry::squared_distances(Configuration(p));
    const SquaredDistanceMatrix again = geometry::squared_distances(geometry::embed(s, dim));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        EXPECT_NEAR(again(static_cast<std::size_t>(i), static_cast<std::size_t>(j)),
                    oracle::dist2(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]), 1e-9);
      }
    }
  }
}

TEST(Properties, CayleyMengerMatchesOracle) {
  oracle::Rng rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 3 + static_cast<std::size_t>(trial % 3);
    oracle::Points p(k, std::vector<double>(3));
    for (auto& row : p) {
      for (double& x : row) x = rng.uniform(-1, 1);
    }
    const double expected = oracle::cayley_menger(p);
    std::vector<int> all(k);
    for (std::size_t i = 0; i < k; ++i) all[i] = static_cast<int>(i);
    const double got = geometry::cayley_menger(geometry::squared_distances(Configuration(p)), all);
    EXPECT_NEAR(got, expected, 1e-10 * (1 + std::abs(expected)));
  }
}

TEST(Properties, LemmaTwoPositiveOnSamples) {
  oracle::Rng rng(108);
  for (int i = 0; i < 20000; ++i) {
    lemmas::Lemma2Point p;
    p.rho1 = rng.uniform(-50.0, -1e-6);
    p.rho2 = std::max(p.rho1, 1.0 / p.rho1) * rng.uniform(0.0, 1.0);
    p.rho = rng.uniform(0.0, 50.0);
    p.alpha = rng.uniform(-8.0, -0.02);
    if (!(p.rho1 < p.rho2)) continue;
    ASSERT_GT(lemmas::lemma2_A(p), 0.0) << p.rho1 << " " << p.rho2 << " " << p.rho << " " << p.alpha;
  }
}

TEST(Properties, LemmaThreeBoundOnSamples) {
  oracle::Rng rng(109);
  int checked = 0;
  while (checked < 2000) {
    std::vector<double> m = random_masses(rng, 4);
    const double rho1 = rng.uniform(-3.0, -1e-3);
    const double rho2 = std::max(rho1, 1.0 / rho1) * rng.uniform(0.0, 1.0);
    std::vector<double> d{rho1 * m[0], rho2 * m[1], 0.0, 0.0};
    const double rest = -(d[0] + d[1]);
    d[2] = rng.uniform(0.0, 1.0) * rest;
    d[3] = rest - d[2];
    if (!(d[0] / m[0] < d[1] / m[1]) || !(d[2] * d[3] < m[2] * m[3])) continue;
    const lemmas::Lemma3Result r = lemmas::lemma3_check({d, MassVector(m), Exponent(rng.uniform(-3.0, -0.1))});
    ++checked;
    EXPECT_GE(r.t1_minus_t2, r.Z - 1e-12 * (1 + std::abs(r.Z)));
    if (m[0] >= m[1]) EXPECT_GT(r.t1_minus_t2, 0.0);
  }
}
