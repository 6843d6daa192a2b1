#include "powrel/decay.hpp"

namespace powrel {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonnegative(double x, const char* who) {
  if (!(x >= 0.0)) {
    throw DomainError(std::string(who) + ": argument must be >= 0");
  }
}
}  // namespace

void validate(const DecaySpec& d) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (!std::is_same_v<T, NoDecay>) {
          if (!(v.theta > 0.0) || !std::isfinite(v.theta)) {
            throw ConfigError("decay: theta must be a positive real");
          }
        }
      },
      d);
}

double phi(const DecaySpec& d, double t) {
  require_nonnegative(t, "phi");
  return std::visit([t](const auto& v) { return phi(v, t); }, d);
}

double phi_prime(const DecaySpec& d, double t) {
  require_nonnegative(t, "phi_prime");
  return std::visit([t](const auto& v) { return phi_prime(v, t); }, d);
}

double threshold(const DecaySpec& d, double s, double t) {
  require_nonnegative(s, "threshold");
  require_nonnegative(t, "threshold");
  if (s == 0.0) return 0.0;
  return s / phi(d, t);
}

double time_above(const DecaySpec& d, double level) {
  if (level <= 0.0) return kInf;
  return std::visit(
      [level](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NoDecay>) {
          return level < 1.0 ? kInf : 0.0;
        } else if (level >= 1.0) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, ExponentialDecay>) {
          return -std::log(level) / v.theta;
        } else {
          return (1.0 / level - 1.0) / v.theta;
        }
      },
      d);
}

}  // namespace powrel
