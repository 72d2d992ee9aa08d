#pragma once

#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "moirl/harness.hpp"

namespace moirl {

using Json = nlohmann::ordered_json;

/// Sample-sweep settings layered over an experiment config.
struct SweepConfig {
  ExperimentConfig base;
  std::vector<std::size_t> n_grid{50, 100, 200, 400, 800, 1600};
};

/// Every field with defaults materialized, environment parameters included.
Json config_to_json(const ExperimentConfig& config);

/// Missing keys take their defaults; unknown keys and ill-typed values throw
/// InvalidArgument. The result is validated.
ExperimentConfig config_from_json(const Json& json);

/// "seeds" accepts an explicit list or {"first": s, "count": n}.
ExperimentConfig load_config(const std::filesystem::path& path);

Json sweep_config_to_json(const SweepConfig& config);
/// Reads the experiment keys plus an optional "sweep_grid" list.
SweepConfig sweep_config_from_json(const Json& json);
SweepConfig load_sweep_config(const std::filesystem::path& path);

SweepOptions sweep_options(const SweepConfig& config);

Json env_spec_to_json(const EnvSpec& spec);
EnvSpec env_spec_from_json(const Json& json);

}  // namespace moirl
