#pragma once

#include "powrel/copula.hpp"
#include "powrel/decay.hpp"
#include "powrel/distribution.hpp"

namespace powrel {

/// Full description of an (n-r+1)-out-of-n power system: the system is up at
/// time t when at least n-r+1 components are alive and every live component's
/// decayed power W*phi(t) exceeds the demand level s.
struct SystemModel {
  int n = 1;  // component count, >= 1
  int r = 1;  // rank: the system fails at the r-th component failure
  DistributionSpec lifetime{Exponential{1.0}};
  DistributionSpec power{Exponential{1.0}};
  CopulaSpec copula{Independence{}};
  DecaySpec decay{NoDecay{}};
};

/// Residual-life threshold bookkeeping. PaperLiteral re-evaluates the power
/// threshold s/phi(x) at the running point x; InspectionTime freezes it at
/// s/phi(t), the inspection instant.
enum class ThresholdConvention { PaperLiteral, InspectionTime };

struct EvalPoint {
  double t = 0.0;  // time, >= 0
  double s = 0.0;  // demanded power level, >= 0
};

void validate(const SystemModel& m);

}  // namespace powrel
