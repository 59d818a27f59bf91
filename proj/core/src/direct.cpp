#include "centralcfg/direct.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>

#include "centralcfg/errors.hpp"
#include "centralcfg/geometry.hpp"
#include "numerics.hpp"

namespace centralcfg::direct {

namespace {

void check_shapes(const Configuration& config, const MassVector& masses) {
  if (config.size() != masses.size()) {
    throw DimensionMismatch("configuration has " + std::to_string(config.size()) + " points but " +
                            std::to_string(masses.size()) + " masses were given");
  }
}

// r_i = Σ_k m_k (S_ik - c)(q_i - q_k), which equals γ_i - λ(q_i - q_G) for c = λ/M.
Eigen::VectorXd stacked_residual(const Eigen::VectorXd& x, int n, int d, const MassVector& masses,
                                 double a, double c) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(n * d);
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const Eigen::VectorXd diff = x.segment(i * d, d) - x.segment(k * d, d);
      const double weight = std::pow(diff.squaredNorm(), a) - c;
      r.segment(i * d, d) += masses[static_cast<std::size_t>(k)] * weight * diff;
      r.segment(k * d, d) -= masses[static_cast<std::size_t>(i)] * weight * diff;
    }
  }
  return r;
}

Eigen::MatrixXd stacked_jacobian(const Eigen::VectorXd& x, int n, int d, const MassVector& masses,
                                 double a, double c) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const Eigen::VectorXd diff = x.segment(i * d, d) - x.segment(k * d, d);
      const double s = diff.squaredNorm();
      const double weight = std::pow(s, a) - c;
      // d/dq_i of weight * diff
      const Eigen::MatrixXd block = weight * Eigen::MatrixXd::Identity(d, d) +
                                    2.0 * a * std::pow(s, a - 1.0) * diff * diff.transpose();
      const double mi = masses[static_cast<std::size_t>(i)];
      const double mk = masses[static_cast<std::size_t>(k)];
      jac.block(i * d, i * d, d, d) += mk * block;
      jac.block(i * d, k * d, d, d) -= mk * block;
      jac.block(k * d, k * d, d, d) += mi * block;
      jac.block(k * d, i * d, d, d) -= mi * block;
    }
  }
  return jac;
}

Eigen::VectorXd random_start(std::mt19937_64& rng, int n, int d, double radius) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd x(n * d);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd dir(d);
    for (int k = 0; k < d; ++k) dir(k) = normal(rng);
    const double r = radius * std::pow(uniform(rng), 1.0 / d);
    x.segment(i * d, d) = dir.normalized() * r;
  }
  return x;
}

Eigen::MatrixXd unstack(const Eigen::VectorXd& x, int n, int d) {
  Eigen::MatrixXd p(n, d);
  for (int i = 0; i < n; ++i) p.row(i) = x.segment(i * d, d).transpose();
  return p;
}

struct StartOutcome {
  StartLog log;
  std::optional<Configuration> solution;
};

}  // namespace

double ForceField::momentum_imbalance(const MassVector& masses) const {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(gammas.cols());
  double scale = 0.0;
  for (Eigen::Index i = 0; i < gammas.rows(); ++i) {
    total += masses[static_cast<std::size_t>(i)] * gammas.row(i).transpose();
    scale += masses[static_cast<std::size_t>(i)] * gammas.row(i).norm();
  }
  return scale > 0.0 ? total.norm() / scale : 0.0;
}

ForceField gamma(const Configuration& config, const MassVector& masses, const Exponent& exponent) {
  check_shapes(config, masses);
  const SquaredDistanceMatrix s = geometry::squared_distances(config);
  const auto& q = config.matrix();
  const Eigen::Index n = q.rows();
  ForceField out{Eigen::MatrixXd::Zero(n, q.cols())};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == i) continue;
      const double interaction = std::pow(s(static_cast<std::size_t>(i), static_cast<std::size_t>(k)), exponent.a());
      out.gammas.row(i) += masses[static_cast<std::size_t>(k)] * interaction * (q.row(i) - q.row(k));
    }
  }
  return out;
}

double cc_residual(const Configuration& config, const MassVector& masses, const Exponent& exponent,
                   double lambda) {
  const ForceField field = gamma(config, masses, exponent);
  const Eigen::VectorXd center = geometry::center_of_mass(config, masses);
  double worst = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Eigen::VectorXd target = lambda * (config.point(i) - center);
    worst = std::max(worst, (field.gammas.row(static_cast<Eigen::Index>(i)).transpose() - target).norm());
  }
  return worst / (std::abs(lambda) * config.diameter());
}

double fit_lambda(const Configuration& config, const MassVector& masses, const Exponent& exponent) {
  const ForceField field = gamma(config, masses, exponent);
  const Eigen::VectorXd center = geometry::center_of_mass(config, masses);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Eigen::VectorXd arm = config.point(i) - center;
    num += masses[i] * field.gammas.row(static_cast<Eigen::Index>(i)).dot(arm.transpose());
    den += masses[i] * arm.squaredNorm();
  }
  return num / den;
}

Configuration normalize_scale(const Configuration& config, const MassVector& masses,
                              const Exponent& exponent, double lambda) {
  if (!(lambda > 0.0)) throw InvalidInput("multiplier lambda must be positive to normalize");
  const double c = std::pow(masses.total() / lambda, 1.0 / (2.0 * exponent.a()));
  const Eigen::VectorXd center = geometry::center_of_mass(config, masses);
  return config.translated(-center).scaled(c);
}

std::vector<double> distance_signature(const Configuration& config) {
  const SquaredDistanceMatrix s = geometry::squared_distances(config);
  std::vector<double> sig;
  sig.reserve(pair_count(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) sig.push_back(s(i, j));
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

bool same_signature(const std::vector<double>& a, const std::vector<double>& b, double rel_tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > rel_tol * std::max(std::abs(a[k]), std::abs(b[k]))) return false;
  }
  return true;
}

PositionSolveResult solve_positions(const MassVector& masses, int dim, const Exponent& exponent,
                                    const PositionSolveOptions& options) {
  const int n = static_cast<int>(masses.size());
  if (dim != n - 2 && dim != n - 1) {
    throw InvalidInput("position solver supports dim = n-2 or n-1 (n = " + std::to_string(n) + ")");
  }
  if (!exponent.theorem_regime()) throw InvalidInput("position solver requires a < 0");
  if (options.starts < 1) throw InvalidInput("need at least one start");

  const double a = exponent.a();
  const double radius = std::pow(masses.total(), 1.0 / (2.0 - 2.0 * a));
  const detail::ResidualFn residual = [&](const Eigen::VectorXd& x) {
    return stacked_residual(x, n, dim, masses, a, 1.0);
  };
  const detail::JacobianFn jacobian = [&](const Eigen::VectorXd& x) {
    return stacked_jacobian(x, n, dim, masses, a, 1.0);
  };
  const detail::AdmissibleFn admissible = [&](const Eigen::VectorXd& x) {
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) {
        if ((x.segment(i * dim, dim) - x.segment(k * dim, dim)).squaredNorm() < 1e-20) return false;
      }
    }
    return true;
  };

  auto run_start = [&](int start) {
    StartOutcome outcome;
    outcome.log.start_id = start;
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(start)};
    std::mt19937_64 rng(seq);
    detail::LmOptions lm;
    lm.max_iterations = options.max_iterations;
    lm.cost_target = 0.5 * std::pow(1e-15 * masses.total(), 2);
    const detail::LmResult fit = detail::levenberg_marquardt(residual, jacobian, random_start(rng, n, dim, radius), lm,
                                                             admissible);
    outcome.log.iterations = fit.iterations;
    outcome.log.final_residual = std::numeric_limits<double>::infinity();
    try {
      const Configuration raw(unstack(fit.x, n, dim));
      const Configuration aligned = geometry::embed(geometry::squared_distances(raw), dim);
      const Configuration fixed = aligned.translated(-geometry::center_of_mass(aligned, masses));
      const double res = cc_residual(fixed, masses, exponent, masses.total());
      outcome.log.final_residual = res;
      if (res < options.accept_residual) {
        outcome.log.accepted = true;
        outcome.solution = fixed;
      }
    } catch (const Error&) {
      // collapsed or degenerate start; recorded as a failed start
    }
    return outcome;
  };

  std::vector<std::optional<StartOutcome>> outcomes(static_cast<std::size_t>(options.starts));
  detail::parallel_for(options.starts, options.threads,
                       [&](int s) { outcomes[static_cast<std::size_t>(s)] = run_start(s); });

  PositionSolveResult result;
  std::vector<std::vector<double>> signatures;
  for (auto& outcome : outcomes) {
    result.log.push_back(outcome->log);
    if (!outcome->solution) continue;
    std::vector<double> sig = distance_signature(*outcome->solution);
    const bool duplicate = std::any_of(signatures.begin(), signatures.end(), [&](const auto& other) {
      return same_signature(sig, other, options.duplicate_tolerance);
    });
    if (!duplicate) {
      signatures.push_back(std::move(sig));
      result.solutions.push_back(*outcome->solution);
    }
  }
  if (result.solutions.empty()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& entry : result.log) best = std::min(best, entry.final_residual);
    throw NoConvergence(best, "no start converged to a central configuration (best residual " +
                                  std::to_string(best) + ")");
  }

  std::vector<std::size_t> order(result.solutions.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return signatures[l] < signatures[r]; });
  std::vector<Configuration> sorted;
  sorted.reserve(order.size());
  for (std::size_t idx : order) sorted.push_back(result.solutions[idx]);
  result.solutions = std::move(sorted);
  return result;
}

void write_start_log_csv(std::ostream& out, const std::vector<StartLog>& log) {
  out << "start_id,iterations,final_residual\n";
  out << std::setprecision(17);
  for (const auto& entry : log) {
    out << entry.start_id << ',' << entry.iterations << ',' << entry.final_residual << '\n';
  }
}

}  // namespace centralcfg::direct
