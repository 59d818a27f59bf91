#pragma once

// Reference computations written independently of the library, used to
// check its results.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Points = std::vector<std::vector<double>>;

/// Bisection on the equal-mass square equation 2(1 + δ²)^α = (1 - δ²)^α,
/// the t-equality t1 = t3 for Δ = (-δ,-δ,δ,δ) and unit masses.
inline double square_delta(double alpha) {
  const auto h = [alpha](double d) { return 2.0 * std::pow(1.0 + d * d, alpha) - std::pow(1.0 - d * d, alpha); };
  double lo = 1e-9;
  double hi = 1.0 - 1e-15;
  const double sign_lo = h(lo) > 0.0 ? 1.0 : -1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((h(mid) > 0.0 ? 1.0 : -1.0) == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double dist2(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
  return s;
}

/// Determinant by Gaussian elimination with partial pivoting in long double.
inline long double determinant(std::vector<std::vector<long double>> a) {
  const std::size_t n = a.size();
  long double det = 1.0L;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    }
    if (a[p][c] == 0.0L) return 0.0L;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Bordered Cayley–Menger determinant of the given points.
inline double cayley_menger(const Points& pts) {
  const std::size_t k = pts.size();
  std::vector<std::vector<long double>> m(k + 1, std::vector<long double>(k + 1, 1.0L));
  m[0][0] = 0.0L;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i + 1][j + 1] = dist2(pts[i], pts[j]);
  }
  return static_cast<double>(determinant(m));
}

/// Signed area of a planar triangle.
inline double triangle_area(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c) {
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

/// γ_i = Σ_k m_k |q_i - q_k|^(2a) (q_i - q_k), summed directly.
inline Points accelerations(const Points& q, const std::vector<double>& m, double a) {
  Points g(q.size(), std::vector<double>(q[0].size(), 0.0));
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (k == i) continue;
      const double w = m[k] * std::pow(dist2(q[i], q[k]), a);
      for (std::size_t c = 0; c < q[i].size(); ++c) g[i][c] += w * (q[i][c] - q[k][c]);
    }
  }
  return g;
}

/// Seeded uniform and log-uniform draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace oracle
