#pragma once

#include <stdexcept>
#include <string>

namespace roughdens {

/// Input rejected by a precondition check (dimension mismatch, bad parameter, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A G2 element violates Sym(level2) = level1 (x) level1 / 2.
class GeometricityError : public std::domain_error {
 public:
  GeometricityError(const std::string& what, double residual)
      : std::domain_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Covariance matrix on a grid is not positive semidefinite.
class NotPsdError : public std::domain_error {
 public:
  NotPsdError(const std::string& what, double min_eigenvalue)
      : std::domain_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class DegenerateModelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Solution left the admissible region (non-finite or norm above the guard).
class ExplosionError : public std::runtime_error {
 public:
  ExplosionError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Experiment configuration rejected (unknown names, failed hypotheses).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace roughdens
