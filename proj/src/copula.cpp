#include "powrel/copula.hpp"

namespace powrel {

namespace {
void require_unit(double x, const char* who) {
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw DomainError(std::string(who) + ": argument must lie in [0,1]");
  }
}
}  // namespace

void validate(const CopulaSpec& c) {
  if (const auto* fgm = std::get_if<Fgm>(&c)) {
    if (!(fgm->alpha >= -1.0) || !(fgm->alpha <= 1.0)) {
      throw ConfigError("fgm: alpha must lie in [-1,1]");
    }
  }
}

double cdf(const CopulaSpec& c, double u, double v) {
  require_unit(u, "copula cdf");
  require_unit(v, "copula cdf");
  return std::visit([u, v](const auto& k) { return cdf(k, u, v); }, c);
}

double density(const CopulaSpec& c, double u, double v) {
  require_unit(u, "copula density");
  require_unit(v, "copula density");
  return std::visit([u, v](const auto& k) { return density(k, u, v); }, c);
}

double partial_u(const CopulaSpec& c, double u, double v) {
  require_unit(u, "partial_u");
  require_unit(v, "partial_u");
  return std::visit([u, v](const auto& k) { return partial_u(k, u, v); }, c);
}

double partial_v(const CopulaSpec& c, double u, double v) {
  require_unit(u, "partial_v");
  require_unit(v, "partial_v");
  return std::visit([u, v](const auto& k) { return partial_v(k, u, v); }, c);
}

double survival(const CopulaSpec& c, double u, double v) {
  require_unit(u, "survival copula");
  require_unit(v, "survival copula");
  return std::visit([u, v](const auto& k) { return survival(k, u, v); }, c);
}

double conditional_quantile(const CopulaSpec& c, double u, double p) {
  require_unit(u, "conditional_quantile");
  require_unit(p, "conditional_quantile");
  return std::visit(
      [u, p](const auto& k) { return conditional_quantile(k, u, p); }, c);
}

}  // namespace powrel
