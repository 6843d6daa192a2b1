#pragma once

#include <string>

#include <json.hpp>

#include "powrel/system_model.hpp"

namespace powrel {

// Config-file encoding. A system model is a JSON object with keys
// n, r, lifetime, power, copula, decay; the sub-objects are tagged by "kind":
//   distribution: {"kind":"exponential","rate":..} |
//                 {"kind":"pareto_lomax","shape":..,"scale":..} |
//                 {"kind":"uniform","lo":..,"hi":..}
//   copula:       {"kind":"independence"} | {"kind":"fgm","alpha":..}
//   decay:        {"kind":"exp","theta":..} | {"kind":"rational","theta":..} |
//                 {"kind":"none"}

DistributionSpec distribution_from_json(const nlohmann::json& j);
CopulaSpec copula_from_json(const nlohmann::json& j);
DecaySpec decay_from_json(const nlohmann::json& j);
SystemModel model_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const DistributionSpec& d);
nlohmann::ordered_json to_json(const CopulaSpec& c);
nlohmann::ordered_json to_json(const DecaySpec& d);
nlohmann::ordered_json to_json(const SystemModel& m);

/// Reads and validates a model file; every failure (missing file, parse
/// error, bad values) surfaces as ConfigError.
SystemModel load_model_file(const std::string& path);

}  // namespace powrel
