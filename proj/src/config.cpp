#include "powrel/config.hpp"

#include <fstream>

namespace powrel {

namespace {

using nlohmann::json;

double number_field(const json& j, const char* key, const char* ctx) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError(std::string(ctx) + ": missing numeric field '" + key +
                      "'");
  }
  return j.at(key).get<double>();
}

std::string kind_field(const json& j, const char* ctx) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError(std::string(ctx) + ": expected an object with 'kind'");
  }
  return j.at("kind").get<std::string>();
}

}  // namespace

DistributionSpec distribution_from_json(const json& j) {
  const std::string kind = kind_field(j, "distribution");
  DistributionSpec d;
  if (kind == "exponential") {
    d = Exponential{number_field(j, "rate", "exponential")};
  } else if (kind == "pareto_lomax") {
    d = ParetoLomax{number_field(j, "shape", "pareto_lomax"),
                    number_field(j, "scale", "pareto_lomax")};
  } else if (kind == "uniform") {
    d = Uniform{number_field(j, "lo", "uniform"),
                number_field(j, "hi", "uniform")};
  } else {
    throw ConfigError("distribution: unknown kind '" + kind + "'");
  }
  validate(d);
  return d;
}

CopulaSpec copula_from_json(const json& j) {
  const std::string kind = kind_field(j, "copula");
  CopulaSpec c;
  if (kind == "independence") {
    c = Independence{};
  } else if (kind == "fgm") {
    c = Fgm{number_field(j, "alpha", "fgm")};
  } else {
    throw ConfigError("copula: unknown kind '" + kind + "'");
  }
  validate(c);
  return c;
}

DecaySpec decay_from_json(const json& j) {
  const std::string kind = kind_field(j, "decay");
  DecaySpec d;
  if (kind == "exp") {
    d = ExponentialDecay{number_field(j, "theta", "decay")};
  } else if (kind == "rational") {
    d = RationalDecay{number_field(j, "theta", "decay")};
  } else if (kind == "none") {
    d = NoDecay{};
  } else {
    throw ConfigError("decay: unknown kind '" + kind + "'");
  }
  validate(d);
  return d;
}

SystemModel model_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("model: expected a JSON object");
  for (const char* key : {"n", "r", "lifetime", "power", "copula", "decay"}) {
    if (!j.contains(key)) {
      throw ConfigError(std::string("model: missing field '") + key + "'");
    }
  }
  if (!j.at("n").is_number_integer() || !j.at("r").is_number_integer()) {
    throw ConfigError("model: n and r must be integers");
  }
  SystemModel m;
  m.n = j.at("n").get<int>();
  m.r = j.at("r").get<int>();
  m.lifetime = distribution_from_json(j.at("lifetime"));
  m.power = distribution_from_json(j.at("power"));
  m.copula = copula_from_json(j.at("copula"));
  m.decay = decay_from_json(j.at("decay"));
  validate(m);
  return m;
}

nlohmann::ordered_json to_json(const DistributionSpec& d) {
  nlohmann::ordered_json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          j["kind"] = "exponential";
          j["rate"] = v.rate;
        } else if constexpr (std::is_same_v<T, ParetoLomax>) {
          j["kind"] = "pareto_lomax";
          j["shape"] = v.shape;
          j["scale"] = v.scale;
        } else {
          j["kind"] = "uniform";
          j["lo"] = v.lo;
          j["hi"] = v.hi;
        }
      },
      d);
  return j;
}

nlohmann::ordered_json to_json(const CopulaSpec& c) {
  nlohmann::ordered_json j;
  if (const auto* fgm = std::get_if<Fgm>(&c)) {
    j["kind"] = "fgm";
    j["alpha"] = fgm->alpha;
  } else {
    j["kind"] = "independence";
  }
  return j;
}

nlohmann::ordered_json to_json(const DecaySpec& d) {
  nlohmann::ordered_json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExponentialDecay>) {
          j["kind"] = "exp";
          j["theta"] = v.theta;
        } else if constexpr (std::is_same_v<T, RationalDecay>) {
          j["kind"] = "rational";
          j["theta"] = v.theta;
        } else {
          j["kind"] = "none";
        }
      },
      d);
  return j;
}

nlohmann::ordered_json to_json(const SystemModel& m) {
  nlohmann::ordered_json j;
  j["n"] = m.n;
  j["r"] = m.r;
  j["lifetime"] = to_json(m.lifetime);
  j["power"] = to_json(m.power);
  j["copula"] = to_json(m.copula);
  j["decay"] = to_json(m.decay);
  return j;
}

SystemModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("model file " + path + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace powrel
