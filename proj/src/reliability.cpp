#include "powrel/reliability.hpp"

#include <algorithm>
#include <cmath>

#include "powrel/special_functions.hpp"

namespace powrel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// x^k for small nonnegative integer k; ipow(x, 0) == 1 even at x == 0.
double ipow(double x, int k) {
  double acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= x;
  return acc;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void require_nonnegative(double x, const char* who) {
  if (!(x >= 0.0)) {
    throw DomainError(std::string(who) + ": argument must be >= 0");
  }
}

double order_coeff(const SystemModel& m) {
  return m.n * binom_coeff(m.n - 1, m.r - 1);
}

// Sum_{k<r} C(n,k); with survival^(n-r+1) this envelopes the order-statistic
// survival from above.
double envelope_coeff(const SystemModel& m) {
  double acc = 0.0;
  for (int k = 0; k < m.r; ++k) acc += binom_coeff(m.n, k);
  return acc;
}

// d/dt of joint_survival_fixed at fixed power level w (closed form).
double fixed_survival_dt(const SystemModel& m, double x, double w) {
  const double fx = pdf(m.lifetime, x);
  if (fx == 0.0) return 0.0;
  const double u = cdf(m.lifetime, x);
  const double sx = survival(m.lifetime, x);
  const double vw = cdf(m.power, w);
  const double bw = survival(m.power, w);
  const double joint_tail = survival(m.copula, sx, bw);
  return -order_coeff(m) * ipow(u, m.r - 1) * ipow(joint_tail, m.n - m.r) *
         fx * (1.0 - partial_u(m.copula, u, vw));
}

// d/dw of joint_survival_fixed at fixed time x (one quadrature).
double fixed_survival_dw(const SystemModel& m, double x, double w,
                         const QuadratureConfig& cfg) {
  const double fw = pdf(m.power, w);
  if (fw == 0.0) return 0.0;
  const double vw = cdf(m.power, w);
  const double bw = survival(m.power, w);
  const int nr = m.n - m.r;
  const auto& cop = m.copula;

  auto integrand = [&](double u) {
    const double joint_tail = survival(cop, 1.0 - u, bw);
    double inner = ipow(joint_tail, nr) * density(cop, u, vw);
    if (nr > 0) {
      inner += nr * ipow(joint_tail, nr - 1) *
               (1.0 - partial_u(cop, u, vw)) * (1.0 - partial_v(cop, u, vw));
    }
    return ipow(u, m.r - 1) * inner;
  };
  const double lo = cdf(m.lifetime, x);
  if (lo >= 1.0) return 0.0;
  return -order_coeff(m) * fw * integrate(integrand, lo, 1.0, cfg).value;
}

// Threshold of the PaperLiteral convention as a function of the running
// point, and its derivative factor s * phi'(x) / phi(x)^2.
double running_threshold_rate(const SystemModel& m, double s, double x) {
  if (s == 0.0) return 0.0;
  const double ph = phi(m.decay, x);
  return s * phi_prime(m.decay, x) / (ph * ph);
}

double conditioned_denominator(const SystemModel& m, double t, double s,
                               ThresholdConvention conv,
                               const QuadratureConfig& cfg, double* w_fixed) {
  if (conv == ThresholdConvention::InspectionTime) {
    const double w0 = threshold(m.decay, s, t);
    *w_fixed = w0;
    return std::isinf(w0) ? 0.0 : joint_survival_fixed(m, t, w0, cfg);
  }
  *w_fixed = kInf;  // unused
  return joint_survival(m, {t, s}, cfg);
}

}  // namespace

double physical_reliability(const SystemModel& m, double t) {
  require_nonnegative(t, "physical_reliability");
  return reg_inc_beta(m.n - m.r + 1, m.r, survival(m.lifetime, t));
}

double joint_survival_fixed(const SystemModel& m, double t, double w,
                            const QuadratureConfig& cfg) {
  require_nonnegative(t, "joint_survival_fixed");
  require_nonnegative(w, "joint_survival_fixed");

  const double bw = survival(m.power, w);
  if (bw == 0.0) return 0.0;
  const double lo = cdf(m.lifetime, t);
  if (lo >= 1.0) return 0.0;

  const double vw = cdf(m.power, w);
  const int nr = m.n - m.r;
  const auto& cop = m.copula;
  auto integrand = [&](double u) {
    return ipow(u, m.r - 1) * ipow(survival(cop, 1.0 - u, bw), nr) *
           (1.0 - partial_u(cop, u, vw));
  };
  return clamp01(order_coeff(m) * integrate(integrand, lo, 1.0, cfg).value);
}

double joint_survival(const SystemModel& m, const EvalPoint& p,
                      const QuadratureConfig& cfg) {
  require_nonnegative(p.t, "joint_survival");
  require_nonnegative(p.s, "joint_survival");
  const double w = threshold(m.decay, p.s, p.t);
  if (std::isinf(w)) return 0.0;
  return joint_survival_fixed(m, p.t, w, cfg);
}

double joint_pdf(const SystemModel& m, double t, double s) {
  require_nonnegative(t, "joint_pdf");
  require_nonnegative(s, "joint_pdf");

  const double fx = pdf(m.lifetime, t);
  const double fw = pdf(m.power, s);
  if (fx == 0.0 || fw == 0.0) return 0.0;

  const double u = cdf(m.lifetime, t);
  const double v = cdf(m.power, s);
  const double joint_tail =
      survival(m.copula, survival(m.lifetime, t), survival(m.power, s));
  const int nr = m.n - m.r;

  double inner = ipow(joint_tail, nr) * density(m.copula, u, v);
  if (nr > 0) {
    inner += nr * ipow(joint_tail, nr - 1) *
             (1.0 - partial_u(m.copula, u, v)) *
             (1.0 - partial_v(m.copula, u, v));
  }
  return order_coeff(m) * ipow(u, m.r - 1) * fx * fw * inner;
}

double min_concomitant_survival(const SystemModel& m, double s,
                                const QuadratureConfig& cfg) {
  return joint_survival_fixed(m, 0.0, s, cfg);
}

double operational_reliability(const SystemModel& m, const EvalPoint& p,
                               const QuadratureConfig& cfg) {
  const double d = min_concomitant_survival(m, p.s, cfg);
  if (d <= 0.0) {
    throw ConditioningError(
        "operational_reliability: power condition has probability zero");
  }
  return clamp01(joint_survival(m, p, cfg) / d);
}

double residual_life_cdf(const SystemModel& m, double t, double s, double x,
                         ThresholdConvention conv,
                         const QuadratureConfig& cfg) {
  require_nonnegative(t, "residual_life_cdf");
  require_nonnegative(s, "residual_life_cdf");
  if (!(x > t)) throw DomainError("residual_life_cdf: requires x > t");

  double w0 = 0.0;
  const double den = conditioned_denominator(m, t, s, conv, cfg, &w0);
  if (den <= 0.0) {
    throw ConditioningError(
        "residual_life_cdf: conditioning event has probability zero");
  }
  const double num = conv == ThresholdConvention::InspectionTime
                         ? joint_survival_fixed(m, x, w0, cfg)
                         : joint_survival(m, {x, s}, cfg);
  return clamp01(1.0 - num / den);
}

double residual_life_pdf(const SystemModel& m, double t, double s, double x,
                         ThresholdConvention conv,
                         const QuadratureConfig& cfg) {
  require_nonnegative(t, "residual_life_pdf");
  require_nonnegative(s, "residual_life_pdf");
  if (!(x > t)) throw DomainError("residual_life_pdf: requires x > t");

  double w0 = 0.0;
  const double den = conditioned_denominator(m, t, s, conv, cfg, &w0);
  if (den <= 0.0) {
    throw ConditioningError(
        "residual_life_pdf: conditioning event has probability zero");
  }

  double ddx;  // d/dx of the conditioned survival numerator
  if (conv == ThresholdConvention::InspectionTime) {
    ddx = fixed_survival_dt(m, x, w0);
  } else {
    const double w = threshold(m.decay, s, x);
    if (std::isinf(w) || survival(m.power, w) == 0.0) return 0.0;
    ddx = fixed_survival_dt(m, x, w) +
          fixed_survival_dw(m, x, w, cfg) * (-running_threshold_rate(m, s, x));
  }
  return std::max(0.0, -ddx / den);
}

double mean_residual_life(const SystemModel& m, double t, double s,
                          ThresholdConvention conv,
                          const QuadratureConfig& cfg) {
  require_nonnegative(t, "mean_residual_life");
  require_nonnegative(s, "mean_residual_life");

  double w0 = 0.0;
  const double den = conditioned_denominator(m, t, s, conv, cfg, &w0);
  if (den <= 0.0) {
    throw ConditioningError(
        "mean_residual_life: conditioning event has probability zero");
  }

  auto survivor = [&](double x) {
    return conv == ThresholdConvention::InspectionTime
               ? joint_survival_fixed(m, x, w0, cfg)
               : joint_survival(m, {x, s}, cfg);
  };
  const double coeff = envelope_coeff(m);
  const int mpow = m.n - m.r + 1;
  auto tail_bound = [&](double b) {
    return coeff * survival_pow_tail_integral(m.lifetime, mpow, b);
  };
  const IntegralResult tail = integrate_to_negligible(survivor, t, tail_bound, cfg);
  return tail.value / den;
}

double joint_pdf_total_mass(const SystemModel& m,
                            const QuadratureConfig& cfg) {
  auto slice = [&](double t) {
    auto transformed = [&](double v) {
      const double s = quantile(m.power, v);
      const double fw = pdf(m.power, s);
      return fw > 0.0 ? joint_pdf(m, t, s) / fw : 0.0;
    };
    return integrate(transformed, 0.0, 1.0, cfg).value;
  };
  const double t_lo = std::max(0.0, support_lo(m.lifetime));
  // truncate where at most 1e-12 of the system-lifetime mass remains
  const double tail_level =
      std::pow(1e-12 / envelope_coeff(m), 1.0 / (m.n - m.r + 1));
  const double t_hi =
      std::min(support_hi(m.lifetime),
               quantile(m.lifetime, 1.0 - std::min(tail_level, 0.5)));
  return integrate(slice, t_lo, t_hi, cfg).value;
}

}  // namespace powrel
