#pragma once

#include <cmath>
#include <limits>
#include <variant>

#include "powrel/errors.hpp"

namespace powrel {

// Deterministic power-decay factor: phi(0) = 1, continuous, nonincreasing.
// NoDecay (phi == 1) never approaches zero; it exists so the fixed-threshold
// quantities are reachable through the same code path, and is meant for
// testing setups only.

struct ExponentialDecay {
  double theta = 1.0;  // > 0; phi(t) = exp(-theta t)
};

struct RationalDecay {
  double theta = 1.0;  // > 0; phi(t) = 1 / (1 + theta t)
};

struct NoDecay {};

using DecaySpec = std::variant<ExponentialDecay, RationalDecay, NoDecay>;

inline double phi(const ExponentialDecay& d, double t) {
  return std::exp(-d.theta * t);
}
inline double phi(const RationalDecay& d, double t) {
  return 1.0 / (1.0 + d.theta * t);
}
inline double phi(const NoDecay&, double) { return 1.0; }

inline double phi_prime(const ExponentialDecay& d, double t) {
  return -d.theta * std::exp(-d.theta * t);
}
inline double phi_prime(const RationalDecay& d, double t) {
  const double den = 1.0 + d.theta * t;
  return -d.theta / (den * den);
}
inline double phi_prime(const NoDecay&, double) { return 0.0; }

void validate(const DecaySpec& d);

/// phi(t) for t >= 0; value in (0,1], phi(0) = 1.
double phi(const DecaySpec& d, double t);

/// d phi / dt, always <= 0.
double phi_prime(const DecaySpec& d, double t);

/// s / phi(t): the raw-power level a component must exceed at time t for its
/// decayed power to stay above s. May be huge or +inf once phi underflows;
/// callers treat levels beyond the power support as zero survival.
double threshold(const DecaySpec& d, double s, double t);

/// sup{ t >= 0 : phi(t) > level }. +inf when level <= 0 (or NoDecay with
/// level < 1), 0 when level >= 1.
double time_above(const DecaySpec& d, double level);

}  // namespace powrel
