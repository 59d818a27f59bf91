#include "centralcfg/dziobek.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include "centralcfg/direct.hpp"
#include "centralcfg/errors.hpp"
#include "centralcfg/geometry.hpp"
#include "numerics.hpp"

namespace centralcfg::dziobek {

namespace {

void check_size(std::size_t got, std::size_t expected, const char* what) {
  if (got != expected) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(expected) + " entries, got " +
                            std::to_string(got));
  }
}

bool in_domain(std::span<const double> deltas, const MassVector& masses, double margin) {
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    for (std::size_t j = i + 1; j < deltas.size(); ++j) {
      if (!(deltas[i] * deltas[j] < (1.0 - margin) * masses[i] * masses[j])) return false;
    }
  }
  return true;
}

// Unvalidated distance map used inside the iteration.
Eigen::MatrixXd raw_distances(const Eigen::VectorXd& x, const MassVector& masses, double alpha) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double base = 1.0 - x(i) * x(j) / (masses[static_cast<std::size_t>(i)] * masses[static_cast<std::size_t>(j)]);
      s(i, j) = s(j, i) = std::pow(base, alpha);
    }
  }
  return s;
}

Eigen::VectorXd t_system(const Eigen::VectorXd& x, const MassVector& masses, double alpha) {
  const Eigen::Index n = x.size();
  const Eigen::MatrixXd s = raw_distances(x, masses, alpha);
  const Eigen::VectorXd t = s * x;  // diagonal of s is zero
  Eigen::VectorXd f(n);
  f(0) = x.sum();
  for (Eigen::Index i = 0; i + 1 < n; ++i) f(i + 1) = t(i) - t(i + 1);
  return f;
}

double signed_cayley_menger(const Eigen::MatrixXd& s) {
  const Eigen::Index n = s.rows();
  Eigen::MatrixXd b = Eigen::MatrixXd::Ones(n + 1, n + 1);
  b(0, 0) = 0.0;
  b.bottomRightCorner(n, n) = s;
  return b.fullPivLu().determinant() / std::pow(s.maxCoeff(), static_cast<double>(n) - 1.0);
}

double relative_t_spread(const Eigen::VectorXd& x, const MassVector& masses, double alpha) {
  const Eigen::VectorXd t = raw_distances(x, masses, alpha) * x;
  return (t.maxCoeff() - t.minCoeff()) / (t.cwiseAbs().maxCoeff() + 1.0);
}

enum class PatternMatch { same, flipped, none };

PatternMatch match_pattern(const Eigen::VectorXd& x, std::span<const int> pattern) {
  bool same = true;
  bool flipped = true;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const int sign = x(i) > 0.0 ? 1 : (x(i) < 0.0 ? -1 : 0);
    same = same && sign == pattern[static_cast<std::size_t>(i)];
    flipped = flipped && sign == -pattern[static_cast<std::size_t>(i)];
  }
  return same ? PatternMatch::same : (flipped ? PatternMatch::flipped : PatternMatch::none);
}

bool lexicographic_less(const CCSolution& l, const CCSolution& r) {
  return std::lexicographical_compare(l.deltas.values().begin(), l.deltas.values().end(),
                                      r.deltas.values().begin(), r.deltas.values().end());
}

double max_abs_gap(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

SquaredDistanceMatrix delta_to_distances(std::span<const double> deltas, const MassVector& masses,
                                         const Exponent& exponent) {
  check_size(deltas.size(), masses.size(), "delta_to_distances");
  const std::size_t n = deltas.size();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double product = deltas[i] * deltas[j];
      const double bound = masses[i] * masses[j];
      if (!(product < bound)) {
        throw DomainViolation("Delta_" + std::to_string(i + 1) + " * Delta_" + std::to_string(j + 1) + " = " +
                              std::to_string(product) + " is not below m_i m_j = " + std::to_string(bound));
      }
      const double v = std::pow(1.0 - product / bound, exponent.alpha());
      s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      s(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return SquaredDistanceMatrix(s);
}

std::vector<double> t_values(std::span<const double> deltas, const SquaredDistanceMatrix& s) {
  check_size(deltas.size(), s.size(), "t_values");
  std::vector<double> t(deltas.size(), 0.0);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    for (std::size_t j = 0; j < deltas.size(); ++j) {
      if (j != i) t[i] += deltas[j] * s(i, j);
    }
  }
  return t;
}

double t_gap(int i, int j, std::span<const double> deltas, const SquaredDistanceMatrix& s) {
  check_size(deltas.size(), s.size(), "t_gap");
  const int n = static_cast<int>(deltas.size());
  if (i == j) throw InvalidInput("t_gap needs two distinct indices");
  if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidInput("t_gap index out of range");
  const auto ui = static_cast<std::size_t>(i);
  const auto uj = static_cast<std::size_t>(j);
  double gap = (deltas[uj] - deltas[ui]) * s(ui, uj);
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (k != ui && k != uj) gap += deltas[k] * (s(ui, k) - s(uj, k));
  }
  return gap;
}

double t_spread(std::span<const double> t) {
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  double largest = 0.0;
  for (double v : t) largest = std::max(largest, std::abs(v));
  return (*hi - *lo) / (largest + 1.0);
}

DziobekFit fit_lambda_mu(const SquaredDistanceMatrix& s, std::span<const double> deltas, const MassVector& masses,
                         const Exponent& exponent) {
  check_size(deltas.size(), masses.size(), "fit_lambda_mu");
  check_size(s.size(), masses.size(), "fit_lambda_mu");
  const std::size_t n = deltas.size();
  const auto pairs = static_cast<Eigen::Index>(pair_count(n));
  Eigen::MatrixXd design(pairs, 2);
  Eigen::VectorXd rhs(pairs);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++row) {
      design(row, 0) = 1.0;
      design(row, 1) = deltas[i] * deltas[j] / (masses[i] * masses[j]);
      rhs(row) = std::pow(s(i, j), exponent.a());
    }
  }
  const Eigen::Vector2d coeffs = design.completeOrthogonalDecomposition().solve(rhs);
  DziobekFit fit;
  fit.lambda_over_M = coeffs(0);
  fit.mu = coeffs(1);
  fit.max_residual = (design * coeffs - rhs).cwiseAbs().maxCoeff();
  return fit;
}

ValidationReport validate(const CCSolution& candidate, const Tolerances& tolerances) {
  ValidationReport report;
  const auto deltas = candidate.deltas.values();
  report.residuals.t_spread = t_spread(t_values(deltas, candidate.distances));
  const DziobekFit fit = fit_lambda_mu(candidate.distances, deltas, candidate.masses, candidate.exponent);
  report.lambda_over_M = fit.lambda_over_M;
  report.mu = fit.mu;
  report.residuals.dziobek_fit = fit.max_residual;
  report.residuals.cayley_menger = geometry::cayley_menger_relative(candidate.distances);
  report.residuals.direct =
      direct::cc_residual(candidate.positions, candidate.masses, candidate.exponent, candidate.masses.total());

  auto require = [&](bool ok, const std::string& what) {
    if (!ok) report.failures.push_back(what);
  };
  require(report.residuals.t_spread < tolerances.t_spread, "t-spread " + std::to_string(report.residuals.t_spread));
  require(report.residuals.dziobek_fit < tolerances.dziobek_fit,
          "Dziobek fit residual " + std::to_string(report.residuals.dziobek_fit));
  require(report.residuals.cayley_menger < tolerances.cayley_menger,
          "Cayley-Menger residual " + std::to_string(report.residuals.cayley_menger));
  require(report.residuals.direct < tolerances.direct,
          "direct residual " + std::to_string(report.residuals.direct));
  require(report.mu < 0.0, "mu is not negative");
  report.accepted = report.failures.empty();
  return report;
}

CCSolution make_solution(const MassVector& masses, const Exponent& exponent, std::span<const double> deltas,
                         const Tolerances& tolerances) {
  check_size(deltas.size(), masses.size(), "make_solution");
  SquaredDistanceMatrix s = delta_to_distances(deltas, masses, exponent);
  const Configuration embedded = geometry::embed(s, static_cast<int>(masses.size()) - 2);
  Configuration positions = embedded.translated(-geometry::center_of_mass(embedded, masses));
  CCSolution solution{masses, exponent, DziobekCoords(std::vector<double>(deltas.begin(), deltas.end())),
                      std::move(s), std::move(positions), 1.0, -1.0, Residuals{}, false};
  const ValidationReport report = validate(solution, tolerances);
  solution.lambda_over_M = report.lambda_over_M;
  solution.mu = report.mu;
  solution.residuals = report.residuals;
  solution.accepted = report.accepted;
  return solution;
}

CCSolution from_positions(const Configuration& config, const MassVector& masses, const Exponent& exponent,
                          const Tolerances& tolerances) {
  check_size(config.size(), masses.size(), "from_positions");
  if (config.dim() != static_cast<int>(masses.size()) - 2) {
    throw DimensionMismatch("positions must have dimension n-2 = " + std::to_string(masses.size() - 2));
  }
  const double lambda = direct::fit_lambda(config, masses, exponent);
  Configuration positions = direct::normalize_scale(config, masses, exponent, lambda);
  SquaredDistanceMatrix s = geometry::squared_distances(positions);
  std::vector<double> ray = geometry::barycentric_coordinates(positions);

  // S_ij - 1 = -c² r_i r_j / (m_i m_j), least squares in c²
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < ray.size(); ++i) {
    for (std::size_t j = i + 1; j < ray.size(); ++j) {
      const double p = ray[i] * ray[j] / (masses[i] * masses[j]);
      num -= (std::pow(s(i, j), exponent.a()) - 1.0) * p;
      den += p * p;
    }
  }
  const double c = std::sqrt(std::abs(num / den));
  for (double& r : ray) r *= c;

  CCSolution solution{masses, exponent, DziobekCoords(std::move(ray)), std::move(s), std::move(positions), 1.0, -1.0, Residuals{}, false};
  const ValidationReport report = validate(solution, tolerances);
  solution.lambda_over_M = report.lambda_over_M;
  solution.mu = report.mu;
  solution.residuals = report.residuals;
  solution.accepted = report.accepted;
  return solution;
}

std::vector<int> parse_sign_pattern(std::string_view pattern) {
  std::vector<int> out;
  for (char c : pattern) {
    if (c == '-') {
      out.push_back(-1);
    } else if (c == '+') {
      out.push_back(1);
    } else {
      throw InvalidInput("sign pattern may contain only '-' and '+', got '" + std::string(pattern) + "'");
    }
  }
  return out;
}

namespace {

struct NewtonRun {
  Eigen::VectorXd x;
  int iterations = 0;
  bool converged = false;
};

// Deflated damped Newton on the t-system for fixed masses, with the
// Cayley–Menger-augmented least-squares fallback when Newton stalls.
NewtonRun find_root(Eigen::VectorXd x, const MassVector& masses, double alpha, const SolverOptions& options) {
  const std::size_t n = masses.size();
  const auto dim = static_cast<Eigen::Index>(n);
  double mass_scale = 0.0;
  for (double m : masses.values()) mass_scale += m * m;
  mass_scale /= static_cast<double>(n);

  // Δ = 0 is a regular root of the t-system; the deflation factor makes it
  // repelling without moving any other root.
  const detail::ResidualFn deflated = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return t_system(y, masses, alpha) * (1.0 + mass_scale / y.squaredNorm());
  };
  const detail::AdmissibleFn admissible = [&](const Eigen::VectorXd& y) {
    return in_domain(std::span<const double>(y.data(), n), masses, options.domain_margin);
  };
  const detail::ResidualFn augmented = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd f(dim + 1);
    f.head(dim) = t_system(y, masses, alpha);
    f(dim) = options.cayley_menger_weight * signed_cayley_menger(raw_distances(y, masses, alpha));
    return f;
  };
  const auto converged = [&](const Eigen::VectorXd& y) {
    return admissible(y) && relative_t_spread(y, masses, alpha) <= options.tolerances.t_spread &&
           std::abs(y.sum()) <= 1e-13 * y.cwiseAbs().maxCoeff();
  };

  NewtonRun run;
  while (!admissible(x)) x *= 0.5;
  Eigen::VectorXd f = deflated(x);
  for (; run.iterations < options.max_newton_iterations; ++run.iterations) {
    const double fnorm = f.norm();
    if (fnorm == 0.0) break;
    const Eigen::MatrixXd jac = detail::finite_difference_jacobian(deflated, x, 1e-7, admissible);
    const Eigen::VectorXd step = jac.fullPivLu().solve(-f);
    if (!step.allFinite()) break;
    bool moved = false;
    double tau = 1.0;
    for (int halving = 0; halving < 60; ++halving, tau *= 0.5) {
      const Eigen::VectorXd trial = x + tau * step;
      if (!admissible(trial)) continue;
      const Eigen::VectorXd f_trial = deflated(trial);
      if (f_trial.norm() < (1.0 - 1e-4 * tau) * fnorm) {
        x = trial;
        f = f_trial;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  if (!converged(x)) {
    detail::LmOptions lm;
    lm.max_iterations = 200;
    const detail::JacobianFn jac = [&](const Eigen::VectorXd& y) {
      return detail::finite_difference_jacobian(augmented, y, 1e-7, admissible);
    };
    const detail::LmResult fallback = detail::levenberg_marquardt(augmented, jac, x, lm, admissible);
    run.iterations += fallback.iterations;
    x = fallback.x;
  }
  x.array() -= x.mean();
  run.converged = converged(x);
  run.x = std::move(x);
  return run;
}

bool is_trivial(const Eigen::VectorXd& x, const MassVector& masses) {
  double floor = std::numeric_limits<double>::infinity();
  for (double m : masses.values()) floor = std::min(floor, m);
  return x.cwiseAbs().maxCoeff() < 1e-8 * floor;
}

Eigen::VectorXd ansatz(const MassVector& masses, std::span<const int> sign_pattern) {
  const std::size_t n = masses.size();
  double delta0 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      delta0 = std::min(delta0, std::sqrt(masses[i] * masses[j]) / std::max(masses[i], masses[j]));
    }
  }
  delta0 *= 0.5;
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i)) = sign_pattern[i] * masses[i] * delta0;
  return x;
}

// Tracks the root of `sign_pattern` from equal masses (geometric mean) to
// `masses` along m(τ) = m_eq^(1-τ) m^τ with adaptive steps.
std::optional<NewtonRun> continue_from_equal_masses(const MassVector& masses, double alpha,
                                                    std::span<const int> sign_pattern,
                                                    const SolverOptions& options) {
  const std::size_t n = masses.size();
  double log_mean = 0.0;
  for (double m : masses.values()) log_mean += std::log(m);
  const double mean = std::exp(log_mean / static_cast<double>(n));
  auto masses_at = [&](double tau) {
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = std::pow(mean, 1.0 - tau) * std::pow(masses[i], tau);
    return MassVector(std::move(m));
  };
  auto acceptable = [&](const NewtonRun& run, const MassVector& m) {
    return run.converged && !is_trivial(run.x, m) && match_pattern(run.x, sign_pattern) == PatternMatch::same;
  };

  const MassVector equal = masses_at(0.0);
  NewtonRun current = find_root(ansatz(equal, sign_pattern), equal, alpha, options);
  if (current.converged && match_pattern(current.x, sign_pattern) == PatternMatch::flipped) current.x = -current.x;
  if (!acceptable(current, equal)) return std::nullopt;

  int total_iterations = current.iterations;
  double tau = 0.0;
  double step = 0.1;
  while (tau < 1.0) {
    const double next = std::min(1.0, tau + step);
    const MassVector m = masses_at(next);
    // Δ_i scales with m_i along the path
    Eigen::VectorXd guess = current.x;
    const MassVector previous = masses_at(tau);
    for (std::size_t i = 0; i < n; ++i) guess(static_cast<Eigen::Index>(i)) *= m[i] / previous[i];
    NewtonRun trial = find_root(guess, m, alpha, options);
    total_iterations += trial.iterations;
    if (acceptable(trial, m)) {
      current = std::move(trial);
      tau = next;
      step = std::min(2.0 * step, 0.25);
    } else {
      step *= 0.5;
      if (step < 1e-4) return std::nullopt;
    }
  }
  current.iterations = total_iterations;
  return current;
}

}  // namespace

SolveOutcome solve_all(const MassVector& masses, const Exponent& exponent, std::span<const int> sign_pattern,
                       const SolverOptions& options) {
  const std::size_t n = masses.size();
  check_size(sign_pattern.size(), n, "sign pattern");
  if (!exponent.theorem_regime()) throw InvalidInput("the normalized solver requires a < 0");
  if (options.starts < 1) throw InvalidInput("need at least one start");
  const bool has_negative = std::find(sign_pattern.begin(), sign_pattern.end(), -1) != sign_pattern.end();
  const bool has_positive = std::find(sign_pattern.begin(), sign_pattern.end(), 1) != sign_pattern.end();
  if (!has_negative || !has_positive) {
    throw InvalidInput("sign pattern needs both signs since the coordinates sum to zero");
  }
  const double alpha = exponent.alpha();

  SolveOutcome outcome;
  outcome.best_residual = std::numeric_limits<double>::infinity();

  auto classify = [&](int start_id, NewtonRun run, bool from_continuation) {
    StartRecord record;
    record.start_id = start_id;
    record.iterations = run.iterations;
    Eigen::VectorXd& x = run.x;
    record.final_residual = in_domain(std::span<const double>(x.data(), n), masses, 0.0)
                                ? relative_t_spread(x, masses, alpha)
                                : std::numeric_limits<double>::infinity();
    outcome.best_residual = std::min(outcome.best_residual, record.final_residual);
    const PatternMatch match = match_pattern(x, sign_pattern);
    if (!run.converged) {
      record.outcome = "no-convergence";
    } else if (is_trivial(x, masses)) {
      record.outcome = "trivial";
    } else if (match == PatternMatch::none) {
      record.outcome = "pattern-mismatch";
    } else {
      if (match == PatternMatch::flipped) x = -x;
      const std::span<const double> root(x.data(), n);
      const double scale = x.cwiseAbs().maxCoeff();
      const bool seen = std::any_of(outcome.accepted.begin(), outcome.accepted.end(), [&](const CCSolution& s) {
        return max_abs_gap(s.deltas.values(), root) <= 1e-8 * scale;
      });
      const bool seen_spurious = std::any_of(outcome.spurious.begin(), outcome.spurious.end(), [&](const RejectedRoot& r) {
        return max_abs_gap(r.deltas, root) <= 1e-8 * scale;
      });
      if (seen || seen_spurious) {
        record.outcome = "duplicate";
      } else {
        try {
          CCSolution solution = make_solution(masses, exponent, root, options.tolerances);
          if (solution.accepted) {
            record.outcome = "accepted";
            outcome.accepted.push_back(std::move(solution));
          } else {
            record.outcome = "spurious";
            const ValidationReport report = validate(solution, options.tolerances);
            std::string reason;
            for (const auto& failure : report.failures) reason += (reason.empty() ? "" : "; ") + failure;
            outcome.spurious.push_back({std::vector<double>(root.begin(), root.end()), reason, solution.residuals});
          }
        } catch (const NotRealizable& e) {
          record.outcome = "spurious";
          Residuals residuals;
          residuals.t_spread = record.final_residual;
          outcome.spurious.push_back({std::vector<double>(root.begin(), root.end()), e.what(), residuals});
        }
      }
    }
    if (from_continuation) record.outcome = "continuation:" + record.outcome;
    outcome.starts.push_back(record);
  };

  for (int start = 0; start < options.starts; ++start) {
    Eigen::VectorXd x = ansatz(masses, sign_pattern);
    if (start > 0) {
      std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                        static_cast<std::uint32_t>(start)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      std::uniform_real_distribution<double> overall(0.3, 1.7);
      const double factor = overall(rng);
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) *= factor * (1.0 + options.jitter * unit(rng));
    }
    classify(start, find_root(std::move(x), masses, alpha, options), false);
  }

  if (outcome.accepted.empty() && options.continuation) {
    if (auto run = continue_from_equal_masses(masses, alpha, sign_pattern, options)) {
      classify(options.starts, std::move(*run), true);
    } else {
      outcome.starts.push_back({options.starts, 0, std::numeric_limits<double>::infinity(),
                                "continuation:no-convergence"});
    }
  }

  std::sort(outcome.accepted.begin(), outcome.accepted.end(), lexicographic_less);
  return outcome;
}

CCSolution solve_normalized(const MassVector& masses, const Exponent& exponent, std::span<const int> sign_pattern,
                            const SolverOptions& options) {
  SolveOutcome outcome = solve_all(masses, exponent, sign_pattern, options);
  if (!outcome.accepted.empty()) return std::move(outcome.accepted.front());
  if (!outcome.spurious.empty()) {
    throw SpuriousRoot(static_cast<int>(outcome.spurious.size()),
                       "every converged root was rejected: " + outcome.spurious.front().reason);
  }
  throw NoConvergence(outcome.best_residual, "no start converged (best relative t-spread " +
                                                 std::to_string(outcome.best_residual) + ")");
}

}  // namespace centralcfg::dziobek
