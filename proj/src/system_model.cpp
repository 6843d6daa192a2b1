#include "powrel/system_model.hpp"

namespace powrel {

void validate(const SystemModel& m) {
  if (m.n < 1) throw ConfigError("model: n must be >= 1");
  if (m.r < 1 || m.r > m.n) throw ConfigError("model: requires 1 <= r <= n");
  validate(m.lifetime);
  validate(m.power);
  validate(m.copula);
  validate(m.decay);
  if (support_lo(m.lifetime) < 0.0) {
    throw ConfigError("model: lifetime support must lie in [0,inf)");
  }
}

}  // namespace powrel
