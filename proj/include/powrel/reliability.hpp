#pragma once

#include "powrel/quadrature.hpp"
#include "powrel/system_model.hpp"

namespace powrel {

// Survival quantities of an (n-r+1)-out-of-n power system. The system
// lifetime is the r-th order statistic of the component lifetimes; the power
// condition constrains the minimum of the power values paired with the
// components still alive at that point (the concomitants of ranks r..n).
//
// Everything below reduces, after the substitution u = F_X(x), to
// one-dimensional integrals over [F_X(t), 1) of bounded smooth integrands
// built from the copula, its partial derivatives and its survival copula.

/// P{system lifetime > t} ignoring the power condition. Evaluated through the
/// regularized incomplete beta function of the component survival
/// probability.
double physical_reliability(const SystemModel& m, double t);

/// Joint survival of the system lifetime and the weakest live-component power
/// against a fixed raw-power level w:
///   P{ X_{r:n} > t, all powers of components ranked r..n exceed w }.
double joint_survival_fixed(const SystemModel& m, double t, double w,
                            const QuadratureConfig& cfg = {});

/// Same event with the decayed-power threshold: the level compared against the
/// raw powers is s/phi(t). Zero (exactly) once that level leaves the power
/// support.
double joint_survival(const SystemModel& m, const EvalPoint& p,
                      const QuadratureConfig& cfg = {});

/// Joint density of (system lifetime, weakest live-component raw power); the
/// mixed second derivative of joint_survival_fixed. Decay does not enter.
double joint_pdf(const SystemModel& m, double t, double s);

/// Survival function of the weakest live-component power at time zero:
/// D(s) = joint_survival_fixed(m, 0, s).
double min_concomitant_survival(const SystemModel& m, double s,
                                const QuadratureConfig& cfg = {});

/// Conditional system survival given the power condition holds:
/// joint_survival(m, (t,s)) / D(s). Requires D(s) > 0.
double operational_reliability(const SystemModel& m, const EvalPoint& p,
                               const QuadratureConfig& cfg = {});

/// cdf at x of the system lifetime conditioned on survival past t with the
/// power condition at level s; x > t. The convention selects how the power
/// threshold follows x (see ThresholdConvention).
double residual_life_cdf(const SystemModel& m, double t, double s, double x,
                         ThresholdConvention conv,
                         const QuadratureConfig& cfg = {});

/// Density of the conditioned lifetime above; analytic derivative of
/// residual_life_cdf in x.
double residual_life_pdf(const SystemModel& m, double t, double s, double x,
                         ThresholdConvention conv,
                         const QuadratureConfig& cfg = {});

/// Expected remaining operating time past t under the power condition,
/// computed as the integrated conditional survival over (t, inf).
double mean_residual_life(const SystemModel& m, double t, double s,
                          ThresholdConvention conv,
                          const QuadratureConfig& cfg = {});

/// Total mass of joint_pdf over its support; equals 1 for a correct model
/// and quadrature configuration. The power axis is integrated through the
/// probability transform, the time axis directly (truncated where the
/// lifetime order-statistic tail falls below 1e-9), so the result is
/// genuinely sensitive to the requested tolerances.
double joint_pdf_total_mass(const SystemModel& m,
                            const QuadratureConfig& cfg = {});

}  // namespace powrel
