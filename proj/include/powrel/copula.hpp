#pragma once

#include <cmath>
#include <variant>

#include "powrel/errors.hpp"

namespace powrel {

// Dependence structure between a component's lifetime and its power.
// All operations accept the closed unit square; the formulas are the
// continuous extensions of the interior expressions.

struct Independence {};

struct Fgm {
  double alpha = 0.0;  // in [-1, 1]; C(u,v) = uv(1 + alpha(1-u)(1-v))
};

using CopulaSpec = std::variant<Independence, Fgm>;

inline double cdf(const Independence&, double u, double v) { return u * v; }
inline double density(const Independence&, double, double) { return 1.0; }
inline double partial_u(const Independence&, double, double v) { return v; }
inline double partial_v(const Independence&, double u, double) { return u; }
inline double survival(const Independence&, double u, double v) {
  return u * v;
}

inline double cdf(const Fgm& c, double u, double v) {
  return u * v * (1.0 + c.alpha * (1.0 - u) * (1.0 - v));
}
inline double density(const Fgm& c, double u, double v) {
  return 1.0 + c.alpha * (1.0 - 2.0 * u) * (1.0 - 2.0 * v);
}
inline double partial_u(const Fgm& c, double u, double v) {
  return v * (1.0 + c.alpha * (1.0 - 2.0 * u) * (1.0 - v));
}
inline double partial_v(const Fgm& c, double u, double v) {
  return u * (1.0 + c.alpha * (1.0 - u) * (1.0 - 2.0 * v));
}
// The survival copula of an FGM copula is FGM with the same parameter;
// evaluating it directly avoids the cancellation in u+v+C(1-u,1-v)-1 deep in
// the tails.
inline double survival(const Fgm& c, double u, double v) {
  return u * v * (1.0 + c.alpha * (1.0 - u) * (1.0 - v));
}

inline double conditional_quantile(const Independence&, double, double p) {
  return p;
}
inline double conditional_quantile(const Fgm& c, double u, double p) {
  const double a = c.alpha * (1.0 - 2.0 * u);
  if (std::fabs(a) < 1e-10) return p;
  // root in [0,1] of a v^2 - (1+a) v + p = 0, written to avoid cancellation
  const double disc = (1.0 + a) * (1.0 + a) - 4.0 * a * p;
  const double v = 2.0 * p / ((1.0 + a) + std::sqrt(disc));
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

void validate(const CopulaSpec& c);

/// C(u,v) on [0,1]^2.
double cdf(const CopulaSpec& c, double u, double v);

/// Copula density c(u,v) = d2C/dudv.
double density(const CopulaSpec& c, double u, double v);

/// dC/du, the conditional law P{V <= v | U = u}.
double partial_u(const CopulaSpec& c, double u, double v);

/// dC/dv, the conditional law P{U <= u | V = v}.
double partial_v(const CopulaSpec& c, double u, double v);

/// Survival copula on survival-scale arguments:
/// survival(c, S_X(x), S_W(w)) = P{X > x, W > w}.
double survival(const CopulaSpec& c, double u, double v);

/// v solving partial_u(c, u, v) = p; exact conditional sampling.
double conditional_quantile(const CopulaSpec& c, double u, double p);

}  // namespace powrel
