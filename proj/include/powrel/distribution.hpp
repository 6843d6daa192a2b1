#pragma once

#include <cmath>
#include <limits>
#include <variant>

#include "powrel/errors.hpp"

namespace powrel {

// Marginal laws for component lifetimes (time units) and powers (power
// units). Evaluations outside the support return the limiting cdf/survival
// value instead of failing; the survival integrands probe arbitrary reals.

struct Exponential {
  double rate = 1.0;  // > 0, support [0, inf)
};

struct ParetoLomax {
  double shape = 1.0;  // > 0; cdf 1 - (1 + x/scale)^(-shape), support [0, inf)
  double scale = 1.0;  // > 0
};

struct Uniform {
  double lo = 0.0;  // lo < hi, support [lo, hi]
  double hi = 1.0;
};

using DistributionSpec = std::variant<Exponential, ParetoLomax, Uniform>;

inline double cdf(const Exponential& d, double x) {
  return x <= 0.0 ? 0.0 : -std::expm1(-d.rate * x);
}
inline double pdf(const Exponential& d, double x) {
  return x < 0.0 ? 0.0 : d.rate * std::exp(-d.rate * x);
}
inline double survival(const Exponential& d, double x) {
  return x <= 0.0 ? 1.0 : std::exp(-d.rate * x);
}
inline double quantile(const Exponential& d, double p) {
  return -std::log1p(-p) / d.rate;
}

inline double cdf(const ParetoLomax& d, double x) {
  return x <= 0.0 ? 0.0 : -std::expm1(-d.shape * std::log1p(x / d.scale));
}
inline double pdf(const ParetoLomax& d, double x) {
  if (x < 0.0) return 0.0;
  return d.shape / d.scale *
         std::exp(-(d.shape + 1.0) * std::log1p(x / d.scale));
}
inline double survival(const ParetoLomax& d, double x) {
  return x <= 0.0 ? 1.0 : std::exp(-d.shape * std::log1p(x / d.scale));
}
inline double quantile(const ParetoLomax& d, double p) {
  return d.scale * std::expm1(-std::log1p(-p) / d.shape);
}

inline double cdf(const Uniform& d, double x) {
  if (x <= d.lo) return 0.0;
  if (x >= d.hi) return 1.0;
  return (x - d.lo) / (d.hi - d.lo);
}
inline double pdf(const Uniform& d, double x) {
  return (x < d.lo || x > d.hi) ? 0.0 : 1.0 / (d.hi - d.lo);
}
inline double survival(const Uniform& d, double x) {
  if (x <= d.lo) return 1.0;
  if (x >= d.hi) return 0.0;
  return (d.hi - x) / (d.hi - d.lo);
}
inline double quantile(const Uniform& d, double p) {
  return d.lo + p * (d.hi - d.lo);
}

void validate(const DistributionSpec& d);

double cdf(const DistributionSpec& d, double x);
double pdf(const DistributionSpec& d, double x);
double survival(const DistributionSpec& d, double x);

/// Inverse cdf; p must lie strictly inside (0,1).
double quantile(const DistributionSpec& d, double p);

/// Inverse-transform sampling: sample(d,u) == quantile(d,u) for u in (0,1).
double sample(const DistributionSpec& d, double u);

double support_lo(const DistributionSpec& d);
double support_hi(const DistributionSpec& d);

/// Closed-form tail integral of survival(x)^m over [b, inf), m >= 1.
/// Returns +inf when the tail is not integrable (Lomax with shape*m <= 1).
double survival_pow_tail_integral(const DistributionSpec& d, int m, double b);

}  // namespace powrel
