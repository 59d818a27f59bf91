#include "numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>
#include <vector>

namespace centralcfg::detail {

Eigen::MatrixXd finite_difference_jacobian(const ResidualFn& f, const Eigen::VectorXd& x,
                                           double rel_step, const AdmissibleFn& admissible) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd jac(f0.size(), x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double h = rel_step * std::max(1.0, std::abs(x(k)));
    Eigen::VectorXd plus = x;
    Eigen::VectorXd minus = x;
    plus(k) += h;
    minus(k) -= h;
    const bool plus_ok = !admissible || admissible(plus);
    const bool minus_ok = !admissible || admissible(minus);
    if (plus_ok && minus_ok) {
      jac.col(k) = (f(plus) - f(minus)) / (2.0 * h);
    } else if (plus_ok) {
      jac.col(k) = (f(plus) - f0) / h;
    } else {
      jac.col(k) = (f0 - f(minus)) / h;
    }
  }
  return jac;
}

LmResult levenberg_marquardt(const ResidualFn& f, const JacobianFn& jacobian, Eigen::VectorXd x0,
                             const LmOptions& options, const AdmissibleFn& admissible) {
  LmResult out;
  out.x = std::move(x0);
  Eigen::VectorXd r = f(out.x);
  out.cost = 0.5 * r.squaredNorm();
  double damping = options.initial_damping;
  for (int it = 0; it < options.max_iterations; ++it) {
    out.iterations = it + 1;
    if (!std::isfinite(out.cost) || out.cost <= options.cost_target) break;
    const Eigen::MatrixXd jac = jacobian(out.x);
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    const double diag_scale = std::max(normal.diagonal().maxCoeff(), 1e-300);

    bool accepted = false;
    bool tiny_step = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      Eigen::MatrixXd lhs = normal;
      for (Eigen::Index k = 0; k < lhs.rows(); ++k) {
        lhs(k, k) += damping * (normal(k, k) + 1e-12 * diag_scale);
      }
      const Eigen::VectorXd step = lhs.ldlt().solve(-grad);
      if (!step.allFinite()) {
        damping *= 10.0;
        continue;
      }
      if (step.norm() <= options.step_tolerance * (out.x.norm() + options.step_tolerance)) {
        tiny_step = true;
        break;
      }
      const Eigen::VectorXd candidate = out.x + step;
      if (admissible && !admissible(candidate)) {
        damping *= 4.0;
        continue;
      }
      const Eigen::VectorXd r_new = f(candidate);
      const double cost_new = 0.5 * r_new.squaredNorm();
      if (std::isfinite(cost_new) && cost_new < out.cost) {
        out.x = candidate;
        r = r_new;
        out.cost = cost_new;
        damping = std::max(damping / 3.0, 1e-15);
        accepted = true;
        break;
      }
      damping *= 4.0;
    }
    if (!accepted || tiny_step) break;
  }
  return out;
}

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             Eigen::VectorXd x0, double initial_step, int max_evaluations,
                             double value_tolerance) {
  const Eigen::Index dim = x0.size();
  std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(dim + 1), x0);
  for (Eigen::Index k = 0; k < dim; ++k) simplex[static_cast<std::size_t>(k + 1)](k) += initial_step;
  std::vector<double> values(simplex.size());
  NelderMeadResult out;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++out.evaluations;
    const double v = objective(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };
  for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  while (out.evaluations < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    if (std::abs(values[worst] - values[best]) <= value_tolerance * (std::abs(values[best]) + value_tolerance)) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) centroid += simplex[order[i]];
    centroid /= static_cast<double>(dim);

    const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
    const double f_reflected = eval(reflected);
    if (f_reflected < values[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }
    const Eigen::VectorXd contracted = centroid + 0.5 * (simplex[worst] - centroid);
    const double f_contracted = eval(contracted);
    if (f_contracted < values[worst]) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      values[i] = eval(simplex[i]);
    }
  }
  const auto it = std::min_element(values.begin(), values.end());
  out.x = simplex[static_cast<std::size_t>(it - values.begin())];
  out.value = *it;
  return out;
}

void parallel_for(int count, int threads, const std::function<void(int)>& task) {
  const int workers = std::clamp(threads, 1, std::max(count, 1));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) task(i);
    });
  }
}

}  // namespace centralcfg::detail
