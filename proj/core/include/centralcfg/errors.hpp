#pragma once

#include <stdexcept>
#include <string>

namespace centralcfg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied data failed (non-positive mass, bad shape, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class CoincidentPoints : public Error {
 public:
  CoincidentPoints(int i, int j, double s)
      : Error("points " + std::to_string(i) + " and " + std::to_string(j) +
              " coincide (squared distance " + std::to_string(s) + ")"),
        i_(i), j_(j) {}
  int first() const { return i_; }
  int second() const { return j_; }

 private:
  int i_;
  int j_;
};

/// The solution space of the barycentric system is not one-dimensional.
class WrongRank : public Error {
 public:
  WrongRank(int nullity, const std::string& what) : Error(what), nullity_(nullity) {}
  int nullity() const { return nullity_; }

 private:
  int nullity_;
};

/// A squared-distance matrix has no Euclidean realization in the requested dimension.
class NotRealizable : public Error {
 public:
  NotRealizable(double most_negative_eigenvalue, int excess_rank, const std::string& what)
      : Error(what), most_negative_(most_negative_eigenvalue), excess_rank_(excess_rank) {}
  double most_negative_eigenvalue() const { return most_negative_; }
  int excess_rank() const { return excess_rank_; }

 private:
  double most_negative_;
  int excess_rank_;
};

/// Some product Δ_i Δ_j reached m_i m_j, so the distance map is undefined.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  NoConvergence(double best_residual, const std::string& what)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// The t-equalities were solved but the root is not a realizable central configuration.
class SpuriousRoot : public Error {
 public:
  SpuriousRoot(int count, const std::string& what) : Error(what), count_(count) {}
  int count() const { return count_; }

 private:
  int count_;
};

class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace centralcfg
