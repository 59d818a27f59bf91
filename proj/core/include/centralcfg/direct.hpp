#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "centralcfg/types.hpp"

namespace centralcfg::direct {

/// Accelerations γ_i = Σ_{k≠i} m_k s_ik^a (q_i - q_k), one row per particle.
struct ForceField {
  Eigen::MatrixXd gammas;

  /// |Σ m_i γ_i| relative to Σ m_i |γ_i|; zero up to rounding.
  double momentum_imbalance(const MassVector& masses) const;
};

ForceField gamma(const Configuration& config, const MassVector& masses, const Exponent& exponent);

/// max_i |γ_i - λ(q_i - q_G)| / (λ · diameter). Zero iff `config` is a
/// central configuration with multiplier λ.
double cc_residual(const Configuration& config, const MassVector& masses, const Exponent& exponent,
                   double lambda);

/// Least-squares multiplier λ minimizing Σ_i m_i |γ_i - λ(q_i - q_G)|^2.
double fit_lambda(const Configuration& config, const MassVector& masses, const Exponent& exponent);

/// Rescales a central configuration with multiplier λ to the normalized one
/// (λ = M), using γ(cq) = c^(2a+1) γ(q).
Configuration normalize_scale(const Configuration& config, const MassVector& masses,
                              const Exponent& exponent, double lambda);

struct StartLog {
  int start_id = 0;
  int iterations = 0;
  double final_residual = 0.0;
  bool accepted = false;
};

struct PositionSolveOptions {
  int starts = 64;
  std::uint64_t seed = 1;
  double accept_residual = 1e-9;
  double duplicate_tolerance = 1e-6;
  int max_iterations = 400;
  int threads = 1;
};

struct PositionSolveResult {
  /// Distinct central configurations with λ = M, barycenter at the origin,
  /// ordered by their sorted squared-distance signature.
  std::vector<Configuration> solutions;
  std::vector<StartLog> log;
};

/// Multi-start Levenberg–Marquardt on Eq. γ_i = M (q_i - q_G). Throws
/// NoConvergence when no start reaches accept_residual.
PositionSolveResult solve_positions(const MassVector& masses, int dim, const Exponent& exponent,
                                    const PositionSolveOptions& options = {});

/// Sorted multiset of squared mutual distances.
std::vector<double> distance_signature(const Configuration& config);

/// Elementwise relative comparison of two signatures.
bool same_signature(const std::vector<double>& a, const std::vector<double>& b, double rel_tol);

/// CSV with header start_id,iterations,final_residual.
void write_start_log_csv(std::ostream& out, const std::vector<StartLog>& log);

}  // namespace centralcfg::direct
