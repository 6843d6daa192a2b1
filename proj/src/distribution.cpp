#include "powrel/distribution.hpp"

namespace powrel {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_probability_open(double p, const char* who) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw DomainError(std::string(who) + ": p must lie in (0,1)");
  }
}
}  // namespace

void validate(const DistributionSpec& d) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          if (!(v.rate > 0.0) || !std::isfinite(v.rate)) {
            throw ConfigError("exponential: rate must be a positive real");
          }
        } else if constexpr (std::is_same_v<T, ParetoLomax>) {
          if (!(v.shape > 0.0) || !std::isfinite(v.shape) ||
              !(v.scale > 0.0) || !std::isfinite(v.scale)) {
            throw ConfigError("pareto_lomax: shape and scale must be positive");
          }
        } else {
          if (!(v.lo < v.hi) || !std::isfinite(v.lo) || !std::isfinite(v.hi)) {
            throw ConfigError("uniform: requires lo < hi, both finite");
          }
        }
      },
      d);
}

double cdf(const DistributionSpec& d, double x) {
  return std::visit([x](const auto& v) { return cdf(v, x); }, d);
}

double pdf(const DistributionSpec& d, double x) {
  return std::visit([x](const auto& v) { return pdf(v, x); }, d);
}

double survival(const DistributionSpec& d, double x) {
  return std::visit([x](const auto& v) { return survival(v, x); }, d);
}

double quantile(const DistributionSpec& d, double p) {
  require_probability_open(p, "quantile");
  return std::visit([p](const auto& v) { return quantile(v, p); }, d);
}

double sample(const DistributionSpec& d, double u) {
  require_probability_open(u, "sample");
  return std::visit([u](const auto& v) { return quantile(v, u); }, d);
}

double support_lo(const DistributionSpec& d) {
  return std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) return v.lo;
        return 0.0;
      },
      d);
}

double support_hi(const DistributionSpec& d) {
  return std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) return v.hi;
        return kInf;
      },
      d);
}

double survival_pow_tail_integral(const DistributionSpec& d, int m, double b) {
  if (m < 1) throw DomainError("survival_pow_tail_integral: m must be >= 1");
  return std::visit(
      [m, b](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          const double mr = m * v.rate;
          const double from = std::max(b, 0.0);
          double tail = std::exp(-mr * from) / mr;
          if (b < 0.0) tail += -b;
          return tail;
        } else if constexpr (std::is_same_v<T, ParetoLomax>) {
          const double ma = m * v.shape;
          if (ma <= 1.0) return kInf;
          const double from = std::max(b, 0.0);
          double tail = v.scale / (ma - 1.0) *
                        std::exp((1.0 - ma) * std::log1p(from / v.scale));
          if (b < 0.0) tail += -b;
          return tail;
        } else {
          if (b >= v.hi) return 0.0;
          const double width = v.hi - v.lo;
          const double full = width / (m + 1.0);
          if (b <= v.lo) return (v.lo - b) + full;
          const double frac = (v.hi - b) / width;
          return full * std::pow(frac, m + 1.0);
        }
      },
      d);
}

}  // namespace powrel
