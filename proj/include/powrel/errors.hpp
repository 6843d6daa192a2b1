#pragma once

#include <stdexcept>
#include <string>

namespace powrel {

/// Argument outside an operation's domain (negative time, probability
/// outside its interval, x <= t for a residual-life query, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The conditioning event has probability zero: D(s)=0, a zero joint
/// survival denominator, or no accepted Monte Carlo draws.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine could not reach the requested tolerance. Carries the
/// best estimate obtained and the accumulated error estimate.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double best, double err)
      : std::runtime_error(what), best_estimate(best), error_estimate(err) {}

  double best_estimate;
  double error_estimate;
};

/// Malformed or inconsistent model configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace powrel
