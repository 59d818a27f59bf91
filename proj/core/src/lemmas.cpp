#include "centralcfg/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <utility>

#include "centralcfg/dziobek.hpp"
#include "centralcfg/errors.hpp"
#include "numerics.hpp"

namespace centralcfg::lemmas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1 - q^p for q in (0,1], accurate as q -> 1.
double one_minus_pow(double q, double p) { return -std::expm1(p * std::log(q)); }

void require_interior(const Lemma2Point& p) {
  p.check();
  if (!(p.rho2 < 0.0)) throw DomainViolation("rho2 must be < 0 for the stationary point of g");
}

// Running minimum / maximum / violation bookkeeping for one batch of samples.
struct Tally {
  std::int64_t samples = 0;
  double min_value = kInf;
  std::map<std::string, double> argmin;
  std::map<std::string, double> lows;
  std::map<std::string, double> highs;
  std::map<std::string, double> counts;
  std::map<std::string, std::int64_t> violations;

  void offer(double value, const std::function<std::map<std::string, double>()>& where) {
    if (value < min_value) {
      min_value = value;
      argmin = where();
    }
  }
  void low(const std::string& key, double v) {
    auto [it, inserted] = lows.try_emplace(key, v);
    if (!inserted) it->second = std::min(it->second, v);
  }
  void high(const std::string& key, double v) {
    auto [it, inserted] = highs.try_emplace(key, v);
    if (!inserted) it->second = std::max(it->second, v);
  }
  void count(const std::string& key, double v = 1.0) { counts[key] += v; }
  void violate(const std::string& key) { ++violations[key]; }

  // Batches are merged in index order, so ties keep the earliest argmin.
  void merge(const Tally& other) {
    samples += other.samples;
    if (other.min_value < min_value) {
      min_value = other.min_value;
      argmin = other.argmin;
    }
    for (const auto& [k, v] : other.lows) low(k, v);
    for (const auto& [k, v] : other.highs) high(k, v);
    for (const auto& [k, v] : other.counts) counts[k] += v;
    for (const auto& [k, v] : other.violations) violations[k] += v;
  }
};

std::mt19937_64 batch_rng(std::uint64_t seed, int batch, std::uint32_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(batch), tag};
  return std::mt19937_64(seq);
}

Tally run_batched(std::int64_t samples, std::int64_t batch_size, int threads,
                  const std::function<Tally(int, std::int64_t)>& batch) {
  const auto batches = static_cast<int>((samples + batch_size - 1) / batch_size);
  std::vector<Tally> results(static_cast<std::size_t>(batches));
  detail::parallel_for(batches, threads, [&](int b) {
    const std::int64_t begin = b * batch_size;
    results[static_cast<std::size_t>(b)] = batch(b, std::min(batch_size, samples - begin));
  });
  Tally total;
  for (const auto& r : results) total.merge(r);
  return total;
}

PropertyReport to_report(std::string lemma, const Tally& tally, const PropertyOptions& options) {
  PropertyReport report;
  report.lemma = std::move(lemma);
  report.samples = tally.samples;
  report.min_value = tally.min_value;
  report.argmin = tally.argmin;
  report.seed = options.seed;
  for (const auto& [k, v] : tally.lows) report.diagnostics[k] = v;
  for (const auto& [k, v] : tally.highs) report.diagnostics[k] = v;
  for (const auto& [k, v] : tally.counts) report.diagnostics[k] = v;
  for (const auto& [k, v] : tally.violations) report.failures.push_back(k + ": " + std::to_string(v));
  report.pass = report.failures.empty();
  return report;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform in the open interval (0,1).
double open_unit(std::mt19937_64& rng) {
  double x = 0.0;
  while (x == 0.0) x = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return x;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

double sigmoid(double y) { return 1.0 / (1.0 + std::exp(-y)); }

// Maps R^4 onto the open sampling box of the A-function.
Lemma2Point box_point(const Eigen::VectorXd& y) {
  Lemma2Point p;
  p.rho1 = -50.0 * sigmoid(y(0));
  const double lo = std::max(p.rho1, 1.0 / p.rho1);
  p.rho2 = lo * sigmoid(y(1));
  p.rho = 50.0 * sigmoid(y(2));
  p.alpha = -8.0 + 7.98 * sigmoid(y(3));
  return p;
}

std::map<std::string, double> describe(const Lemma2Point& p) {
  return {{"rho1", p.rho1}, {"rho2", p.rho2}, {"rho", p.rho}, {"alpha", p.alpha}};
}

}  // namespace

void Lemma2Point::check() const {
  if (!std::isfinite(rho1) || !std::isfinite(rho2) || !std::isfinite(rho) || !std::isfinite(alpha)) {
    throw DomainViolation("Lemma2Point entries must be finite");
  }
  if (!(rho1 < rho2)) throw DomainViolation("need rho1 < rho2");
  if (rho2 > 0.0) throw DomainViolation("need rho2 <= 0");
  if (!(rho1 * rho2 < 1.0)) throw DomainViolation("need rho1*rho2 < 1");
  if (rho < 0.0) throw DomainViolation("need rho >= 0");
  if (!(alpha < 0.0)) throw DomainViolation("need alpha < 0");
}

double lemma2_A(const Lemma2Point& p) {
  p.check();
  const double s13 = std::pow(1.0 - p.rho1 * p.rho, p.alpha);
  if (p.rho2 == 0.0) return -p.rho1 * s13;
  // A is a small difference of large terms near two parts of the boundary,
  // so it is evaluated in two algebraically equal forms and the one with the
  // smaller rounding bound is returned.
  const double gap = p.rho2 - p.rho1;
  const double sum = -(p.rho1 + p.rho2);
  const double e12 = std::expm1(p.alpha * std::log1p(-p.rho1 * p.rho2));  // s12 - 1 >= 0
  const double e23 = std::expm1(p.alpha * std::log1p(-p.rho2 * p.rho));   // s23 - 1 <= 0
  const double s12 = 1.0 + e12;
  const double s23 = 1.0 + e23;

  // A = |ρ1| s13 + (ρ2-ρ1)(s12-1) + |ρ1+ρ2|(1-s23) - |ρ2|(2-s13)
  const double positive = -p.rho1 * s13 + gap * e12 - sum * e23;
  const double negative = -p.rho2 * (2.0 - s13);
  const double expanded = positive - negative;
  const double expanded_bound = positive + negative;

  // A = (ρ2-ρ1)(s12 - |ρ1+ρ2| (s23-s13)/(ρ2-ρ1)), with s23 - s13 from expm1
  const double ratio = std::log1p(gap * p.rho / (1.0 - p.rho2 * p.rho));
  const double slope = -s23 * std::expm1(p.alpha * ratio) / gap;  // (s23 - s13)/(ρ2-ρ1)
  const double factored = gap * (s12 - sum * slope);
  const double factored_bound = gap * (s12 + sum * slope);
  return expanded_bound <= factored_bound ? expanded : factored;
}

double lemma2_g(const Lemma2Point& p, double rho) {
  return std::pow(1.0 - p.rho1 * rho, p.alpha) - std::pow(1.0 - p.rho2 * rho, p.alpha);
}

double lemma2_g_prime(const Lemma2Point& p, double rho) {
  return -p.alpha * p.rho1 * std::pow(1.0 - p.rho1 * rho, p.alpha - 1.0) +
         p.alpha * p.rho2 * std::pow(1.0 - p.rho2 * rho, p.alpha - 1.0);
}

double lemma2_rho0(const Lemma2Point& p) {
  require_interior(p);
  const double q = p.q();
  const double u = p.u();
  return one_minus_pow(q, u) / one_minus_pow(q, u + 1.0) / p.rho1;
}

double lemma2_g_min(const Lemma2Point& p) {
  require_interior(p);
  const double q = p.q();
  const double u = p.u();
  return -one_minus_pow(q, 1.0 + u) * std::pow((1.0 - q) / one_minus_pow(q, u + 1.0), p.alpha);
}

double lemma2_B(const Lemma2Point& p) {
  p.check();
  const double q = p.q();
  return (1.0 - q) * std::pow(1.0 - p.rho1 * p.rho2, p.alpha) + (1.0 + q) * lemma2_g(p, p.rho);
}

double lemma2_C(const Lemma2Point& p) {
  const double q = p.q();
  return (1.0 - q) + (1.0 + q) * lemma2_g_min(p);
}

double laguerre_f(double q, double u) {
  return std::pow(1.0 + q, u) * (1.0 - q) + std::pow(q, 1.0 + u) - 1.0;
}

double laguerre_f_prime(double q, double u) {
  return -(1.0 + u) * std::pow(1.0 + q, u) + 2.0 * u * std::pow(1.0 + q, u - 1.0) + (1.0 + u) * std::pow(q, u);
}

double laguerre_trinomial(double x, double u) {
  return -(1.0 + u) + 2.0 * u * (1.0 - x) + (1.0 + u) * std::pow(x, u);
}

int laguerre_sign_changes(double u, int points) {
  int changes = 0;
  int last = 0;
  for (int i = 1; i <= points; ++i) {
    const double v = laguerre_f_prime(static_cast<double>(i) / points, u);
    const int sign = (v > 0.0) - (v < 0.0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

std::vector<double> lemma1_products(std::span<const double> deltas, const MassVector& masses) {
  if (deltas.size() != masses.size()) {
    throw DimensionMismatch("got " + std::to_string(deltas.size()) + " coordinates for " +
                            std::to_string(masses.size()) + " masses");
  }
  std::vector<double> out;
  out.reserve(pair_count(deltas.size()));
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    for (std::size_t j = i + 1; j < deltas.size(); ++j) {
      out.push_back((deltas[i] / masses[i] - deltas[j] / masses[j]) * (deltas[i] - deltas[j]));
    }
  }
  return out;
}

Lemma3Result lemma3_check(const Lemma3Point& p) {
  const std::vector<double>& d = p.deltas;
  const MassVector& m = p.masses;
  const std::size_t n = d.size();
  if (n != m.size()) throw DimensionMismatch("deltas and masses differ in length");
  if (!p.exponent.theorem_regime()) throw HypothesisViolation("need a < 0");
  const double rho1 = d[0] / m[0];
  const double rho2 = d[1] / m[1];
  if (!(rho1 < rho2)) throw HypothesisViolation("need Delta_1/m_1 < Delta_2/m_2");
  if (rho2 > 0.0) throw HypothesisViolation("need Delta_2/m_2 <= 0");
  if (!(d[0] * d[1] < m[0] * m[1])) throw HypothesisViolation("need Delta_1*Delta_2 < m_1*m_2");
  for (std::size_t i = 2; i < n; ++i) {
    if (d[i] < 0.0) throw HypothesisViolation("need Delta_" + std::to_string(i + 1) + " >= 0");
  }
  for (std::size_t i = 2; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(d[i] * d[j] < m[i] * m[j])) {
        throw HypothesisViolation("need Delta_i*Delta_j < m_i*m_j for i=" + std::to_string(i + 1) +
                                  ", j=" + std::to_string(j + 1));
      }
    }
  }
  double scale = 0.0;
  double sum = 0.0;
  for (double x : d) {
    scale = std::max(scale, std::abs(x));
    sum += x;
  }
  if (std::abs(sum) > 1e-12 * std::max(1.0, scale)) throw HypothesisViolation("need Delta to sum to zero");

  const SquaredDistanceMatrix s = dziobek::delta_to_distances(d, m, p.exponent);
  Lemma3Result r;
  r.t1_minus_t2 = dziobek::t_gap(0, 1, d, s);
  double smallest = kInf;
  for (std::size_t k = 2; k < n; ++k) {
    const double gap = s(0, k) - s(1, k);
    if (gap < smallest) {
      smallest = gap;
      r.k = static_cast<int>(k);
    }
  }
  const auto k = static_cast<std::size_t>(r.k);
  r.Z = (d[1] - d[0]) * s(0, 1) - (d[0] + d[1]) * smallest;
  r.s1 = -s(0, 1) - s(0, k) + s(1, k);
  r.s2 = s(0, 1) - s(0, k) + s(1, k);
  r.z_over_m2 = r.Z / m[1];
  r.A = lemma2_A({rho1, rho2, d[k] / m[k], p.exponent.alpha()});
  return r;
}

PropertyReport check_lemma1(const PropertyOptions& options) {
  const std::int64_t samples = options.samples > 0 ? options.samples : 200;
  const Tally tally = run_batched(samples, 8, options.threads, [&](int batch, std::int64_t count) {
    Tally t;
    std::mt19937_64 rng = batch_rng(options.seed, batch, 1);
    for (std::int64_t i = 0; i < count; ++i) {
      const bool five = (batch * 8 + i) % 4 == 3;
      std::vector<double> m(five ? 5 : 4);
      for (double& x : m) x = log_uniform(rng, 0.2, 5.0);
      const double a = uniform(rng, -3.0, -0.1);
      const MassVector masses(m);
      dziobek::SolverOptions solver;
      solver.starts = 8;
      solver.seed = rng();
      const auto outcome = dziobek::solve_all(masses, Exponent(a), dziobek::parse_sign_pattern(five ? "--+++" : "--++"),
                                              solver);
      ++t.samples;
      t.count("solutions_checked", 0.0);
      for (const auto& sol : outcome.accepted) {
        t.count("solutions_checked");
        const std::vector<double> products = lemma1_products(sol.deltas.values(), masses);
        const double worst = *std::min_element(products.begin(), products.end());
        t.offer(worst, [&] {
          std::map<std::string, double> at{{"a", a}};
          for (std::size_t k = 0; k < m.size(); ++k) at["m" + std::to_string(k + 1)] = m[k];
          return at;
        });
        if (worst < -1e-12) t.violate("negative Lemma 1 product");
        if (!(sol.mu < 0.0)) t.violate("mu not negative");
      }
    }
    return t;
  });
  return to_report("lemma1", tally, options);
}

PropertyReport check_lemma2(const PropertyOptions& options) {
  const std::int64_t samples = options.samples > 0 ? options.samples : 100000;
  Tally tally = run_batched(samples, 4096, options.threads, [&](int batch, std::int64_t count) {
    Tally t;
    std::mt19937_64 rng = batch_rng(options.seed, batch, 2);
    for (std::int64_t i = 0; i < count; ++i) {
      Lemma2Point p;
      p.rho1 = -50.0 + 50.0 * uniform(rng, 0.0, 1.0);
      p.rho2 = std::max(p.rho1, 1.0 / p.rho1) * uniform(rng, 0.0, 1.0);
      p.rho = 50.0 * uniform(rng, 0.0, 1.0);
      p.alpha = -8.0 + 7.98 * uniform(rng, 0.0, 1.0);
      ++t.samples;
      const double A = lemma2_A(p);
      t.offer(A, [&] { return describe(p); });
      if (!(A > 1e-12)) t.violate("A <= 1e-12");

      // The rho2 = 0 face through the same (rho1, rho, alpha): reduced form
      // -rho1*s13 against the general expression.
      if (i % 100 == 0) {
        Lemma2Point face = p;
        face.rho2 = 0.0;
        const double reduced = lemma2_A(face);
        const double s13 = std::pow(1.0 - face.rho1 * face.rho, face.alpha);
        const double general = -face.rho1 - face.rho1 * (s13 - 1.0);
        t.count("boundary_samples");
        t.low("boundary_min_A", reduced);
        t.high("boundary_reduced_form_gap", std::abs(reduced - general) / -face.rho1);
        if (!(reduced > 0.0)) t.violate("A <= 0 on rho2 = 0");
      }
      if (p.rho2 == 0.0) continue;

      const double rho0 = lemma2_rho0(p);
      const double g_min = lemma2_g_min(p);
      const double g_at_rho0 = lemma2_g(p, rho0);
      t.high("max_g_min_gap", std::abs(g_at_rho0 - g_min));
      if (std::abs(g_at_rho0 - g_min) >= 1e-10) t.violate("closed-form g(rho0) disagrees");
      if (!(rho0 > 0.0)) t.violate("rho0 not positive");
      if (g_at_rho0 > lemma2_g(p, p.rho) + 1e-12) t.violate("g(rho0) above sampled g(rho)");
      if (!(g_min < 0.0)) t.violate("g(rho0) not negative");

      // Five-point central stencil in extended precision: at this step the
      // three-point stencil has an h^2 error near 1e-9 for large |alpha*rho1|,
      // and double rounding alone contributes about |alpha|*eps/h.
      const long double h = 1e-6L * std::max(1.0, std::abs(rho0));
      const auto g = [&](long double r) {
        return std::pow(1.0L - p.rho1 * r, static_cast<long double>(p.alpha)) -
               std::pow(1.0L - p.rho2 * r, static_cast<long double>(p.alpha));
      };
      const auto slope = static_cast<double>(
          (g(rho0 - 2.0L * h) - 8.0L * g(rho0 - h) + 8.0L * g(rho0 + h) - g(rho0 + 2.0L * h)) / (12.0L * h));
      t.high("max_abs_g_prime_at_rho0", std::abs(slope));
      if (std::abs(slope) >= 1e-9) t.violate("g'(rho0) not zero");

      const double B = lemma2_B(p);
      const double C = lemma2_C(p);
      t.low("min_C", C);
      t.low("min_B_minus_C", B - C);
      t.high("max_B_identity_gap", std::abs(B * -p.rho1 - A) / std::max(1.0, std::abs(A)));
      if (!(C > 0.0)) t.violate("C not positive");
      if (B < C - 1e-12 * (std::abs(B) + std::abs(C))) t.violate("B below C");
    }
    return t;
  });

  // Nelder–Mead on A over the open sampling box. A is positive on the box but
  // its infimum is 0 (rho2 -> rho1, rho2 -> 0 with rho large), so a run is a
  // counterexample only if it reaches A <= 0; the smallest value found is
  // reported as minimizer_min_A.
  const int runs = options.minimizer_runs;
  const Tally minimized = run_batched(runs, 1, options.threads, [&](int run, std::int64_t) {
    Tally t;
    std::mt19937_64 rng = batch_rng(options.seed, run, 3);
    Eigen::VectorXd y0(4);
    for (Eigen::Index k = 0; k < 4; ++k) y0(k) = uniform(rng, -4.0, 4.0);
    const auto objective = [](const Eigen::VectorXd& y) {
      try {
        return lemma2_A(box_point(y));
      } catch (const DomainViolation&) {
        return kInf;  // sigmoid saturated onto an excluded boundary
      }
    };
    const detail::NelderMeadResult best = detail::nelder_mead(objective, y0, 1.0, 4000, 0.0);
    const Lemma2Point p = box_point(best.x);
    t.offer(best.value, [&] { return describe(p); });
    t.count("minimizer_runs");
    t.count("minimizer_runs_below_1e-12", best.value <= 1e-12 ? 1.0 : 0.0);
    if (!(best.value > 0.0)) t.violate("minimizer reached A <= 0");
    return t;
  });
  for (const auto& [k, v] : minimized.counts) tally.count(k, v);
  for (const auto& [k, v] : minimized.violations) tally.violations[k] += v;
  PropertyReport report = to_report("lemma2", tally, options);
  report.diagnostics["minimizer_min_A"] = minimized.min_value;
  for (const auto& [k, v] : minimized.argmin) report.diagnostics["minimizer_argmin_" + k] = v;
  return report;
}

PropertyReport check_lemma3(const PropertyOptions& options) {
  const std::int64_t samples = options.samples > 0 ? options.samples : 10000;
  const Tally tally = run_batched(samples, 1024, options.threads, [&](int batch, std::int64_t count) {
    Tally t;
    std::mt19937_64 rng = batch_rng(options.seed, batch, 4);
    for (std::int64_t i = 0; i < count; ++i) {
      const bool heavier_first = (batch * 1024 + i) % 2 == 0;
      std::vector<double> m(4);
      std::vector<double> d(4);
      double a = 0.0;
      do {
        for (double& x : m) x = log_uniform(rng, 0.2, 5.0);
        if ((m[0] >= m[1]) != heavier_first) std::swap(m[0], m[1]);
        a = uniform(rng, -3.0, -0.1);
        const double rho1 = -3.0 * open_unit(rng);
        const double rho2 = std::max(rho1, 1.0 / rho1) * uniform(rng, 0.0, 1.0);
        d[0] = rho1 * m[0];
        d[1] = rho2 * m[1];
        const double rest = -(d[0] + d[1]);
        const double w = uniform(rng, 0.0, 1.0);
        d[2] = w * rest;
        d[3] = -(d[0] + d[1] + d[2]);
      } while (!(d[2] * d[3] < m[2] * m[3]) || !(d[0] / m[0] < d[1] / m[1]) || d[3] < 0.0);

      const Lemma3Result r = lemma3_check({d, MassVector(m), Exponent(a)});
      ++t.samples;
      const SquaredDistanceMatrix s = dziobek::delta_to_distances(d, MassVector(m), Exponent(a));
      double scale = std::abs(d[1] - d[0]) * s(0, 1);
      for (std::size_t k = 2; k < 4; ++k) scale += d[k] * std::abs(s(0, k) - s(1, k));
      const double margin = (r.t1_minus_t2 - r.Z) / scale;
      t.offer(margin, [&] {
        return std::map<std::string, double>{{"a", a},       {"m1", m[0]}, {"m2", m[1]},   {"m3", m[2]},
                                             {"m4", m[3]},   {"d1", d[0]}, {"d2", d[1]},   {"d3", d[2]},
                                             {"d4", d[3]}};
      });
      if (margin < -1e-13) t.violate("t1 - t2 < Z");
      if (s(0, 1) > 1.0 && s(1, static_cast<std::size_t>(r.k)) < 1.0 && !(r.s1 < 0.0)) t.violate("s1 not negative");
      if (m[0] >= m[1]) {
        t.count("samples_m1_ge_m2");
        t.low("min_t1_minus_t2_when_m1_ge_m2", r.t1_minus_t2);
        t.low("min_A_when_m1_ge_m2", r.A);
        t.low("min_chain_gap_when_m1_ge_m2", (r.z_over_m2 - r.A) / std::max(1.0, std::abs(r.A)));
        if (!(r.t1_minus_t2 > 0.0)) t.violate("t1 <= t2 with m1 >= m2");
        if (!(r.A > 0.0)) t.violate("A not positive");
        if (r.z_over_m2 < r.A - 1e-12 * std::max(1.0, std::abs(r.A))) t.violate("Z/m2 < A with m1 >= m2");
      }
    }
    return t;
  });
  return to_report("lemma3", tally, options);
}

PropertyReport check_laguerre(const PropertyOptions& options) {
  const std::int64_t samples = options.samples > 0 ? options.samples : 10000;
  Tally tally = run_batched(samples, 4096, options.threads, [&](int batch, std::int64_t count) {
    Tally t;
    std::mt19937_64 rng = batch_rng(options.seed, batch, 5);
    for (std::int64_t i = 0; i < count; ++i) {
      const double q = open_unit(rng);
      const double u = -open_unit(rng);
      ++t.samples;
      const double f = laguerre_f(q, u);
      t.offer(f, [&] { return std::map<std::string, double>{{"q", q}, {"u", u}}; });
      if (!(f > 0.0)) t.violate("f <= 0 inside (0,1)");
      if (laguerre_f(1.0, u) != 0.0) t.violate("f(1) != 0");
      const double x = q / (1.0 + q);
      const double factored = std::pow(1.0 + q, u) * laguerre_trinomial(x, u);
      t.high("max_trinomial_factor_gap",
             std::abs(factored - laguerre_f_prime(q, u)) / std::max(1.0, std::abs(laguerre_f_prime(q, u))));
    }
    return t;
  });

  // Deterministic grid of the same size, strictly inside the unit square.
  const auto side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(samples))));
  for (int iq = 0; iq < side; ++iq) {
    for (int iu = 0; iu < side; ++iu) {
      const double q = (iq + 0.5) / side;
      const double u = -(iu + 0.5) / side;
      ++tally.samples;
      const double f = laguerre_f(q, u);
      tally.offer(f, [&] { return std::map<std::string, double>{{"q", q}, {"u", u}}; });
      if (!(f > 0.0)) tally.violate("f <= 0 on grid");
    }
  }
  for (int j = 0; j < 50; ++j) {
    const double u = -(j + 0.5) / 50.0;
    const double slope = laguerre_f_prime(1.0, u);
    tally.high("max_f_prime_at_1", slope);
    tally.high("max_f_prime_at_1_formula_gap", std::abs(slope - (-std::pow(2.0, u) + 1.0 + u)));
    if (!(slope < 0.0)) tally.violate("f'(1) >= 0");
    if (laguerre_f(1.0, u) != 0.0) tally.violate("f(1) != 0");
    const int changes = laguerre_sign_changes(u, 4000);
    tally.high("max_f_prime_sign_changes", changes);
    if (changes > 2) tally.violate("f' changes sign more than twice");
  }
  return to_report("laguerre", tally, options);
}

PropertyReport run_property_check(const std::string& lemma, const PropertyOptions& options) {
  if (lemma == "lemma1") return check_lemma1(options);
  if (lemma == "lemma2") return check_lemma2(options);
  if (lemma == "lemma3") return check_lemma3(options);
  if (lemma == "laguerre") return check_laguerre(options);
  throw InvalidInput("unknown lemma '" + lemma + "' (expected lemma1, lemma2, lemma3 or laguerre)");
}

}  // namespace centralcfg::lemmas
