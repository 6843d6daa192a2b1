#pragma once

#include <functional>

#include "powrel/errors.hpp"

namespace powrel {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 200;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive integration of f over the finite interval [a,b] with an embedded
/// Gauss(7)/Kronrod(15) pair. The segment with the largest error estimate is
/// bisected until the accumulated estimate meets
/// max(abs_tol, rel_tol*|value|). Throws NumericalError (carrying the best
/// estimate) when the subdivision budget runs out.
IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, const QuadratureConfig& cfg = {});

/// Improper integral of a nonnegative decaying f over [a, inf).
/// tail_bound(b) must bound the remainder integral from b on; the window is
/// expanded geometrically until that bound drops below abs_tol/1000, and the
/// final bound is folded into the error estimate.
IntegralResult integrate_to_negligible(
    const std::function<double(double)>& f, double a,
    const std::function<double(double)>& tail_bound,
    const QuadratureConfig& cfg = {});

}  // namespace powrel
