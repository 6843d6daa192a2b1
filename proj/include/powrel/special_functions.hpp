#pragma once

namespace powrel {

/// log of the complete beta function B(a,b), a,b > 0.
double log_beta(double a, double b);

/// Regularized incomplete beta function I_x(a,b) for a,b > 0.
/// Clamps x outside [0,1] to the limiting values 0 and 1.
double reg_inc_beta(double a, double b, double x);

/// Binomial coefficient C(n,k) as a double (exact for the small n used here).
double binom_coeff(int n, int k);

}  // namespace powrel
