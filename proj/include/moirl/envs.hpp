#pragma once

#include <map>
#include <string>

#include "moirl/momdp.hpp"

namespace moirl {

enum class EnvName { Thermostat2d, Thermostat3d, Gridworld3d };

std::string to_string(EnvName name);
EnvName env_name_from_string(const std::string& name);

using EnvParams = std::map<std::string, double>;

/// Environment identity plus overrides of its numeric constants. Unknown keys
/// are rejected when the MDP is built.
struct EnvSpec {
  EnvName name = EnvName::Thermostat2d;
  EnvParams params;
};

/// Every constant of the environment with its default value.
EnvParams default_env_params(EnvName name);

/// Defaults overlaid with the spec's overrides.
EnvParams resolved_env_params(const EnvSpec& spec);

/// Thermostat with states {cool, normal, hot} and actions {heat, cool, idle}.
/// Objectives: energy (1 for idle, 0 for heat/cool after shifting into [0, 1])
/// and comfort of the state reached.
MoMdp build_thermostat2d(const EnvParams& overrides = {});

/// Thermostat plus a ventilation switch. State is (temperature, air level);
/// an open vent costs energy and raises the air level, a closed one lets it
/// decay. The third objective is indoor air quality, scaled by air_scale.
MoMdp build_thermostat3d(const EnvParams& overrides = {});

/// n x n navigation grid with actions {up, down, left, right, stay} and the goal
/// at (n-1, n-1). Objectives: goal proximity 1 - (dist / max_dist)^proximity_exponent,
/// energy saved (1 for stay, move_energy otherwise) and hazard avoidance
/// 1 - hazard(next cell).
///
/// hazard_layout: 0 none, 1 anti-diagonal wall, 2 both diagonals, 3 every third
/// anti-diagonal, 4 graded intensities ((3x + 5y) mod 7) / 6 away from the corners.
/// uniform_start = 0 starts every episode at (0, 0).
MoMdp build_gridworld3d(const EnvParams& overrides = {});

MoMdp build_env(const EnvSpec& spec);

}  // namespace moirl
