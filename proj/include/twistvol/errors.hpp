#pragma once

#include <stdexcept>
#include <string>

namespace twistvol {

/// Argument outside the domain of a function (e.g. a dilogarithm argument on
/// the cut [1, inf), a zero coordinate in the critical system).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested computation would enumerate more lattice terms than the
/// configured budget allows.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, double terms, double budget)
      : std::runtime_error(what), terms_(terms), budget_(budget) {}
  double terms() const noexcept { return terms_; }
  double budget() const noexcept { return budget_; }

 private:
  double terms_;
  double budget_;
};

/// Newton multi-start found no admissible critical point.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// Least-squares extrapolation cannot be carried out with the given points.
class ExtrapolationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid experiment configuration or command-line usage.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace twistvol
