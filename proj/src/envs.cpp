#include "moirl/envs.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace moirl {
namespace {

EnvParams overlay(EnvParams defaults, const EnvParams& overrides, const std::string& env) {
  for (const auto& [key, value] : overrides) {
    auto it = defaults.find(key);
    if (it == defaults.end()) throw InvalidArgument("unknown parameter '" + key + "' for " + env);
    if (!std::isfinite(value)) throw InvalidArgument("parameter '" + key + "' must be finite");
    it->second = value;
  }
  return defaults;
}

void require_unit_interval(const EnvParams& p, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    const double v = p.at(k);
    if (v < 0.0 || v > 1.0) throw InvalidArgument(std::string("parameter '") + k + "' must lie in [0, 1]");
  }
}

// Temperature index after a thermostat action; saturates at the extremes.
std::size_t next_temperature(std::size_t temp, std::size_t action) {
  switch (action) {
    case 0: return std::min<std::size_t>(temp + 1, 2);  // heat
    case 1: return temp == 0 ? 0 : temp - 1;            // cool
    default: return temp;                               // idle
  }
}

}  // namespace

std::string to_string(EnvName name) {
  switch (name) {
    case EnvName::Thermostat2d: return "thermostat2d";
    case EnvName::Thermostat3d: return "thermostat3d";
    case EnvName::Gridworld3d: return "gridworld3d";
  }
  return "unknown";
}

EnvName env_name_from_string(const std::string& name) {
  if (name == "thermostat2d") return EnvName::Thermostat2d;
  if (name == "thermostat3d") return EnvName::Thermostat3d;
  if (name == "gridworld3d") return EnvName::Gridworld3d;
  throw InvalidArgument("unknown environment '" + name + "'");
}

EnvParams default_env_params(EnvName name) {
  switch (name) {
    case EnvName::Thermostat2d:
      return {{"discount", 0.9},     {"cost_heat", 1.0},      {"cost_cool", 1.0},   {"cost_idle", 0.0},
              {"comfort_cool", 0.95}, {"comfort_normal", 1.0}, {"comfort_hot", 0.97}};
    case EnvName::Thermostat3d:
      return {{"discount", 0.95},   {"cost_heat", 1.0},     {"cost_cool", 1.0},   {"cost_idle", 0.0},
              {"cost_vent", 0.5},   {"comfort_cool", 0.9},  {"comfort_normal", 1.0},
              {"comfort_hot", 0.93}, {"air_levels", 12.0}, {"vent_gain", 1.0},  {"air_scale", 0.2}};
    case EnvName::Gridworld3d:
      return {{"size", 7.0},        {"discount", 0.9},            {"move_energy", 0.0},
              {"hazard_layout", 4.0}, {"proximity_exponent", 1.5}, {"uniform_start", 1.0}};
  }
  return {};
}

EnvParams resolved_env_params(const EnvSpec& spec) {
  return overlay(default_env_params(spec.name), spec.params, to_string(spec.name));
}

MoMdp build_thermostat2d(const EnvParams& overrides) {
  const EnvParams p = overlay(default_env_params(EnvName::Thermostat2d), overrides, "thermostat2d");
  require_unit_interval(p, {"comfort_cool", "comfort_normal", "comfort_hot"});
  constexpr std::size_t S = 3, A = 3, d = 2;
  const double cost[A] = {p.at("cost_heat"), p.at("cost_cool"), p.at("cost_idle")};
  const double comfort[S] = {p.at("comfort_cool"), p.at("comfort_normal"), p.at("comfort_hot")};
  const double lo = *std::min_element(cost, cost + A), hi = *std::max_element(cost, cost + A);

  std::vector<double> transition(S * A * S, 0.0), reward(S * A * d);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t a = 0; a < A; ++a) {
      const std::size_t next = next_temperature(s, a);
      transition[(s * A + a) * S + next] = 1.0;
      reward[(s * A + a) * d + 0] = hi > lo ? (hi - cost[a]) / (hi - lo) : 1.0;
      reward[(s * A + a) * d + 1] = comfort[next];
    }
  }
  return MoMdp(S, A, d, p.at("discount"), std::move(transition), std::move(reward),
               std::vector<double>(S, 1.0 / S));
}

MoMdp build_thermostat3d(const EnvParams& overrides) {
  const EnvParams p = overlay(default_env_params(EnvName::Thermostat3d), overrides, "thermostat3d");
  require_unit_interval(p, {"comfort_cool", "comfort_normal", "comfort_hot", "air_scale"});
  const double levels_param = p.at("air_levels");
  if (levels_param < 2 || levels_param > 32 || levels_param != std::floor(levels_param))
    throw InvalidArgument("air_levels must be an integer in [2, 32]");
  const auto L = static_cast<std::size_t>(levels_param);
  const double gain_param = p.at("vent_gain");
  if (gain_param < 1 || gain_param != std::floor(gain_param)) throw InvalidArgument("vent_gain must be a positive integer");
  const auto gain = static_cast<std::size_t>(gain_param);
  const double air_scale = p.at("air_scale");
  // State = (temperature, air level); action = (thermostat action, vent closed/open) -> a = 2 * t + v.
  // An open vent raises the air level by vent_gain, a closed one lets it decay by one level.
  const std::size_t S = 3 * L, A = 6, d = 3;
  const double temp_cost[3] = {p.at("cost_heat"), p.at("cost_cool"), p.at("cost_idle")};
  const double comfort[3] = {p.at("comfort_cool"), p.at("comfort_normal"), p.at("comfort_hot")};
  const double vent_cost = p.at("cost_vent");

  std::vector<double> costs;
  for (std::size_t a = 0; a < A; ++a) costs.push_back(temp_cost[a / 2] + (a % 2 ? vent_cost : 0.0));
  const double lo = *std::min_element(costs.begin(), costs.end());
  const double hi = *std::max_element(costs.begin(), costs.end());

  std::vector<double> transition(S * A * S, 0.0), reward(S * A * d);
  for (std::size_t temp = 0; temp < 3; ++temp) {
    for (std::size_t air = 0; air < L; ++air) {
      const std::size_t s = temp * L + air;
      for (std::size_t a = 0; a < A; ++a) {
        const std::size_t next_temp = next_temperature(temp, a / 2);
        const std::size_t next_air = a % 2 ? std::min(air + gain, L - 1) : (air == 0 ? 0 : air - 1);
        transition[(s * A + a) * S + next_temp * L + next_air] = 1.0;
        reward[(s * A + a) * d + 0] = hi > lo ? (hi - costs[a]) / (hi - lo) : 1.0;
        reward[(s * A + a) * d + 1] = comfort[next_temp];
        reward[(s * A + a) * d + 2] = air_scale * static_cast<double>(next_air) / static_cast<double>(L - 1);
      }
    }
  }
  return MoMdp(S, A, d, p.at("discount"), std::move(transition), std::move(reward),
               std::vector<double>(S, 1.0 / static_cast<double>(S)));
}

MoMdp build_gridworld3d(const EnvParams& overrides) {
  const EnvParams p = overlay(default_env_params(EnvName::Gridworld3d), overrides, "gridworld3d");
  const double size_param = p.at("size");
  if (size_param < 2 || size_param > 64 || size_param != std::floor(size_param))
    throw InvalidArgument("gridworld size must be an integer in [2, 64]");
  require_unit_interval(p, {"move_energy"});
  const double exponent = p.at("proximity_exponent");
  if (!(exponent > 0.0)) throw InvalidArgument("proximity_exponent must be positive");
  const auto n = static_cast<std::size_t>(size_param);
  const std::size_t S = n * n, A = 5, d = 3;

  std::vector<double> hazard(S, 0.0);
  const int layout = static_cast<int>(p.at("hazard_layout"));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      double h = 0.0;
      switch (layout) {
        case 0: break;
        case 1: h = x + y == n - 1 && x != 0 && y != 0; break;
        case 2: h = (x == y && x != 0 && x != n - 1) || (x + y == n - 1 && x != 0 && y != 0); break;
        case 3: h = (x + y) % 3 == 2 && x + y != 2 * (n - 1); break;
        case 4:
          if ((x != 0 || y != 0) && (x != n - 1 || y != n - 1)) h = static_cast<double>((3 * x + 5 * y) % 7) / 6.0;
          break;
        default: throw InvalidArgument("hazard_layout must be 0, 1, 2, 3 or 4");
      }
      hazard[y * n + x] = h;
    }
  }

  const std::size_t goal = S - 1;
  const double max_dist = 2.0 * static_cast<double>(n - 1);
  std::vector<double> transition(S * A * S, 0.0), reward(S * A * d);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t s = y * n + x;
      for (std::size_t a = 0; a < A; ++a) {
        std::size_t nx = x, ny = y;
        switch (a) {
          case 0: ny = std::min(y + 1, n - 1); break;  // up
          case 1: ny = y == 0 ? 0 : y - 1; break;      // down
          case 2: nx = x == 0 ? 0 : x - 1; break;      // left
          case 3: nx = std::min(x + 1, n - 1); break;  // right
          default: break;                              // stay
        }
        const std::size_t next = ny * n + nx;
        transition[(s * A + a) * S + next] = 1.0;
        const double dist = static_cast<double>((n - 1 - nx) + (n - 1 - ny));
        reward[(s * A + a) * d + 0] = next == goal ? 1.0 : 1.0 - std::pow(dist / max_dist, exponent);
        reward[(s * A + a) * d + 1] = a == 4 ? 1.0 : p.at("move_energy");
        reward[(s * A + a) * d + 2] = 1.0 - hazard[next];
      }
    }
  }
  std::vector<double> start(S, 0.0);
  if (p.at("uniform_start") != 0.0) {
    std::fill(start.begin(), start.end(), 1.0 / static_cast<double>(S));
  } else {
    start[0] = 1.0;
  }
  return MoMdp(S, A, d, p.at("discount"), std::move(transition), std::move(reward), std::move(start));
}

MoMdp build_env(const EnvSpec& spec) {
  switch (spec.name) {
    case EnvName::Thermostat2d: return build_thermostat2d(spec.params);
    case EnvName::Thermostat3d: return build_thermostat3d(spec.params);
    case EnvName::Gridworld3d: return build_gridworld3d(spec.params);
  }
  throw InvalidArgument("unknown environment");
}

}  // namespace moirl
