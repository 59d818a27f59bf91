#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "centralcfg/types.hpp"

namespace centralcfg::lemmas {

/// Arguments of the A-function: ρ1 < ρ2 <= 0, ρ1ρ2 < 1, ρ >= 0, α < 0.
struct Lemma2Point {
  double rho1 = -1.0;
  double rho2 = 0.0;
  double rho = 0.0;
  double alpha = -1.0;

  /// Throws DomainViolation naming the first failed condition.
  void check() const;
  /// ρ2/ρ1, in (0,1) when ρ2 < 0.
  double q() const { return rho2 / rho1; }
  /// 1/(α-1), in (-1,0).
  double u() const { return 1.0 / (alpha - 1.0); }
};

/// A = (ρ2-ρ1) s12 - (ρ1+ρ2)(s13 - s23) with s12 = (1-ρ1ρ2)^α,
/// s13 = (1-ρ1ρ)^α, s23 = (1-ρ2ρ)^α.
double lemma2_A(const Lemma2Point& p);

/// g(ρ) = (1-ρ1ρ)^α - (1-ρ2ρ)^α at the given ρ >= 0 (ignores p.rho).
double lemma2_g(const Lemma2Point& p, double rho);
double lemma2_g_prime(const Lemma2Point& p, double rho);

/// Unique stationary point of g, from ρ1ρ0 = (1-q^u)/(1-q^(u+1)).
/// Requires ρ2 < 0.
double lemma2_rho0(const Lemma2Point& p);

/// Closed form g(ρ0) = (q^(1+u) - 1)((1-q)/(1-q^(u+1)))^α. Requires ρ2 < 0.
double lemma2_g_min(const Lemma2Point& p);

/// B = A/(-ρ1) = (1-q)(1-ρ1²q)^α + (1+q) g(ρ).
double lemma2_B(const Lemma2Point& p);

/// C = (1-q) + (1+q) g(ρ0), the lower bound of B over ρ1 and ρ.
double lemma2_C(const Lemma2Point& p);

/// f(q) = (1+q)^u (1-q) + q^(1+u) - 1 for q in (0,1], u in (-1,0).
double laguerre_f(double q, double u);
double laguerre_f_prime(double q, double u);

/// -(1+u) + 2u(1-x) + (1+u)x^u; f'(q) = (1+q)^u times this at x = q/(1+q).
double laguerre_trinomial(double x, double u);

/// Number of sign changes of f' on an even grid of `points` values in (0,1].
int laguerre_sign_changes(double u, int points);

/// (Δ_i/m_i - Δ_j/m_j)(Δ_i - Δ_j) for all pairs i < j in row-major order.
std::vector<double> lemma1_products(std::span<const double> deltas, const MassVector& masses);

struct Lemma3Point {
  std::vector<double> deltas;
  MassVector masses;
  Exponent exponent;
};

struct Lemma3Result {
  double t1_minus_t2 = 0.0;
  /// (Δ2-Δ1) s12 - (Δ1+Δ2)(s1k - s2k) for the k >= 3 minimizing s1k - s2k.
  double Z = 0.0;
  /// -s12 - s1k + s2k and s12 - s1k + s2k.
  double s1 = 0.0;
  double s2 = 0.0;
  /// 0-based index playing the role of the third particle after renumbering.
  int k = 2;
  /// Z/m2 and A(Δ1/m1, Δ2/m2, Δk/mk).
  double z_over_m2 = 0.0;
  double A = 0.0;
};

/// Evaluates the t1 - t2 >= Z bound. Throws HypothesisViolation unless
/// Δ1/m1 < Δ2/m2 <= 0, Δ1Δ2 < m1m2, Δi >= 0 for i >= 3, a < 0.
Lemma3Result lemma3_check(const Lemma3Point& p);

struct PropertyOptions {
  std::int64_t samples = 0;  // 0 selects the per-lemma default
  std::uint64_t seed = 7;
  int threads = 1;
  /// Nelder–Mead runs for the lemma2 suite.
  int minimizer_runs = 100;
};

struct PropertyReport {
  std::string lemma;
  std::int64_t samples = 0;
  /// Smallest value of the certified quantity and where it occurred.
  double min_value = 0.0;
  std::map<std::string, double> argmin;
  std::uint64_t seed = 0;
  bool pass = false;
  /// Secondary quantities of the suite (worst values of side checks).
  std::map<std::string, double> diagnostics;
  std::vector<std::string> failures;
};

/// Lemma 1 products on solver output for seeded random four-body masses.
PropertyReport check_lemma1(const PropertyOptions& options = {});
/// A > 0 by sampling and minimization, with the ρ0, g(ρ0), B >= C > 0 and
/// g'(ρ0) = 0 side checks.
PropertyReport check_lemma2(const PropertyOptions& options = {});
/// t1 - t2 >= Z on hypothesis-satisfying four-body samples, and t1 > t2,
/// Z/m2 >= A > 0 when m1 >= m2.
PropertyReport check_lemma3(const PropertyOptions& options = {});
/// f > 0 on (0,1) x (-1,0), f(1) = 0, f'(1) < 0, at most two sign changes of f'.
PropertyReport check_laguerre(const PropertyOptions& options = {});

/// Dispatches on "lemma1", "lemma2", "lemma3" or "laguerre"; InvalidInput otherwise.
PropertyReport run_property_check(const std::string& lemma, const PropertyOptions& options = {});

}  // namespace centralcfg::lemmas
