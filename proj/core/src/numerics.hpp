#pragma once

// Small dense solvers shared by the Δ-space and position-space solvers.

#include <functional>

#include <Eigen/Dense>

namespace centralcfg::detail {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
using AdmissibleFn = std::function<bool(const Eigen::VectorXd&)>;

/// Central differences with step h_k = rel_step * max(1, |x_k|).
Eigen::MatrixXd finite_difference_jacobian(const ResidualFn& f, const Eigen::VectorXd& x,
                                           double rel_step = 1e-7,
                                           const AdmissibleFn& admissible = {});

struct LmOptions {
  int max_iterations = 300;
  double initial_damping = 1e-3;
  /// Stop when the cost 0.5|r|^2 falls below this.
  double cost_target = 0.0;
  /// Stop when a step changes x by less than this (relative).
  double step_tolerance = 1e-15;
};

struct LmResult {
  Eigen::VectorXd x;
  double cost = 0.0;
  int iterations = 0;
};

/// Levenberg–Marquardt with Marquardt diagonal scaling plus a small isotropic
/// term, so gauge directions with a null Jacobian stay bounded.
LmResult levenberg_marquardt(const ResidualFn& f, const JacobianFn& jacobian, Eigen::VectorXd x0,
                             const LmOptions& options = {}, const AdmissibleFn& admissible = {});

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evaluations = 0;
};

/// Unconstrained Nelder–Mead; callers map constrained domains through a
/// smooth reparametrization.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             Eigen::VectorXd x0, double initial_step, int max_evaluations,
                             double value_tolerance = 1e-15);

/// Runs task(0..count-1) on up to `threads` std::jthreads pulling indices
/// from a shared counter. Tasks must write only to their own slots.
void parallel_for(int count, int threads, const std::function<void(int)>& task);

}  // namespace centralcfg::detail
