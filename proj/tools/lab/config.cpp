#include "config.hpp"

#include <algorithm>
#include <fstream>

namespace padlab::lab {

json config_to_json(const ExperimentConfig& config) {
  json j = {{"fixture", config.fixture},
            {"trials", config.trials},
            {"seed", config.seed},
            {"output", config.output},
            {"params", config.params}};
  if (config.schedule) j["schedule"] = *config.schedule;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw PreconditionError("config must be a JSON object");
  static const char* const kKeys[] = {"fixture", "schedule", "trials", "seed", "output", "params"};
  for (const auto& [key, value] : j.items())
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys))
      throw PreconditionError("unknown config key '" + key + "'");
  ExperimentConfig config;
  try {
    if (j.contains("fixture")) config.fixture = j.at("fixture").get<std::string>();
    if (j.contains("schedule")) config.schedule = j.at("schedule");
    if (j.contains("trials")) config.trials = j.at("trials").get<std::size_t>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output")) config.output = j.at("output").get<std::string>();
    if (j.contains("params")) config.params = j.at("params");
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("invalid config: ") + e.what());
  }
  if (!config.params.is_object()) throw PreconditionError("config 'params' must be an object");
  if (config.schedule) (void)schedule_from_json(*config.schedule);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw PreconditionError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

}  // namespace padlab::lab
