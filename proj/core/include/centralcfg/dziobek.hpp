#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "centralcfg/types.hpp"

namespace centralcfg::dziobek {

/// s_ij = (1 - Δ_iΔ_j/(m_i m_j))^α, α = 1/a: the mutual distances of the
/// normalized (λ = M) central configuration with coordinates Δ.
/// Throws DomainViolation if some Δ_iΔ_j >= m_i m_j.
SquaredDistanceMatrix delta_to_distances(std::span<const double> deltas, const MassVector& masses,
                                         const Exponent& exponent);

/// t_i = Σ_{j≠i} Δ_j s_ij. All equal when Δ are barycentric coordinates of a
/// configuration realizing s.
std::vector<double> t_values(std::span<const double> deltas, const SquaredDistanceMatrix& s);

/// t_i - t_j = (Δ_j - Δ_i) s_ij + Σ_{k≠i,j} Δ_k (s_ik - s_jk), 0-based i != j.
double t_gap(int i, int j, std::span<const double> deltas, const SquaredDistanceMatrix& s);

/// (max t - min t) / (max |t| + 1).
double t_spread(std::span<const double> t);

struct DziobekFit {
  double lambda_over_M = 0.0;
  double mu = 0.0;
  /// max over pairs of |s_ij^a - λ/M - μ Δ_iΔ_j/(m_i m_j)|
  double max_residual = 0.0;
};

/// Least-squares fit of S_ij - λ/M = μ Δ_iΔ_j/(m_i m_j) over all pairs.
DziobekFit fit_lambda_mu(const SquaredDistanceMatrix& s, std::span<const double> deltas,
                         const MassVector& masses, const Exponent& exponent);

struct Tolerances {
  double t_spread = 1e-11;
  double dziobek_fit = 1e-9;
  double cayley_menger = 1e-8;
  double direct = 1e-8;
};

struct Residuals {
  double t_spread = 0.0;
  double dziobek_fit = 0.0;
  double cayley_menger = 0.0;
  double direct = 0.0;
};

/// A normalized central configuration in dimension n-2 with its diagnostics.
struct CCSolution {
  MassVector masses;
  Exponent exponent;
  DziobekCoords deltas;
  SquaredDistanceMatrix distances;
  /// Embedded positions, barycenter at the origin.
  Configuration positions;
  double lambda_over_M = 1.0;
  double mu = -1.0;
  Residuals residuals;
  bool accepted = false;
};

struct ValidationReport {
  Residuals residuals;
  double lambda_over_M = 0.0;
  double mu = 0.0;
  bool accepted = false;
  /// One entry per failed check, empty when accepted.
  std::vector<std::string> failures;
};

/// Recomputes every diagnostic of `candidate` from its masses, Δ and
/// positions: t-spread, Dziobek fit, Cayley–Menger of all points, and the
/// direct residual of γ_i = M(q_i - q_G).
ValidationReport validate(const CCSolution& candidate, const Tolerances& tolerances = {});

/// Builds the full solution record from normalized Δ: distances, embedding in
/// dimension n-2, fitted (λ/M, μ) and residuals. Throws NotRealizable when the
/// distances have no Euclidean embedding in dimension n-2.
CCSolution make_solution(const MassVector& masses, const Exponent& exponent, std::span<const double> deltas,
                         const Tolerances& tolerances = {});

/// Solution record for a configuration given by positions in dimension n-2:
/// rescales it to λ = M with the least-squares multiplier, takes the
/// barycentric ray and scales it so that S_ij - 1 ≈ -Δ_iΔ_j/(m_i m_j), then
/// validates. Distances are the measured ones. Throws InvalidInput when the
/// fitted multiplier is not positive.
CCSolution from_positions(const Configuration& config, const MassVector& masses, const Exponent& exponent,
                          const Tolerances& tolerances = {});

/// Parses a pattern string of '-' and '+' into -1/+1 entries.
std::vector<int> parse_sign_pattern(std::string_view pattern);

struct SolverOptions {
  int starts = 16;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  int max_newton_iterations = 100;
  /// Relative jitter applied to the ansatz on starts after the first.
  double jitter = 0.35;
  /// Weight of the Cayley–Menger term in the least-squares fallback.
  double cayley_menger_weight = 1.0;
  /// Iterates keep Δ_iΔ_j < (1 - domain_margin) m_i m_j.
  double domain_margin = 1e-9;
  /// When no start is accepted, track the root from equal masses.
  bool continuation = true;
};

struct RejectedRoot {
  std::vector<double> deltas;
  std::string reason;
  Residuals residuals;
};

struct StartRecord {
  int start_id = 0;
  int iterations = 0;
  double final_residual = 0.0;
  /// accepted, duplicate, spurious, pattern-mismatch, trivial, no-convergence
  std::string outcome;
};

struct SolveOutcome {
  /// Distinct accepted roots, sorted lexicographically by Δ.
  std::vector<CCSolution> accepted;
  std::vector<RejectedRoot> spurious;
  std::vector<StartRecord> starts;
  double best_residual = 0.0;
};

/// Multi-start damped Newton on [ΣΔ; t_1 - t_2; ...; t_{n-1} - t_n] with the
/// distances given by delta_to_distances. Every root is post-validated;
/// roots that are not realizable central configurations are reported in
/// `spurious`. If no start is accepted, the root with the same sign pattern is
/// continued along a path in mass space from equal masses. Requires a < 0.
SolveOutcome solve_all(const MassVector& masses, const Exponent& exponent, std::span<const int> sign_pattern,
                       const SolverOptions& options = {});

/// First accepted root of solve_all. Throws SpuriousRoot when every
/// converged root was rejected and NoConvergence when nothing converged.
CCSolution solve_normalized(const MassVector& masses, const Exponent& exponent, std::span<const int> sign_pattern,
                            const SolverOptions& options = {});

}  // namespace centralcfg::dziobek
