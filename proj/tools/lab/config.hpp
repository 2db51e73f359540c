#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <padlab/serialize.hpp>

namespace padlab::lab {

/// Everything a run needs. `params` holds command-specific settings.
struct ExperimentConfig {
  std::string fixture;
  std::optional<json> schedule;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string output;
  json params = json::object();
};

json config_to_json(const ExperimentConfig& config);
/// Throws PreconditionError on unknown keys or wrongly typed values.
ExperimentConfig config_from_json(const json& j);
ExperimentConfig load_config(const std::string& path);

}  // namespace padlab::lab
