#include "moirl/config_io.hpp"

#include <algorithm>
#include <set>

#include "moirl/text_io.hpp"

namespace moirl {
namespace {

void reject_unknown(const Json& object, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!object.is_object()) throw InvalidArgument(where + " must be an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : object.items())
    if (!keys.count(item.key())) throw InvalidArgument("unknown key '" + item.key() + "' in " + where);
}

template <typename T>
T get(const Json& object, const char* key, T fallback) {
  if (!object.contains(key)) return fallback;
  try {
    return object.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string("key '") + key + "' has the wrong type");
  }
}

std::size_t get_count(const Json& object, const char* key, std::size_t fallback) {
  if (!object.contains(key)) return fallback;
  const Json& v = object.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw InvalidArgument(std::string("key '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

Json fit_to_json(const FitOptions& f) {
  return Json{{"step_size", f.step_size},
              {"max_iterations", f.max_iterations},
              {"gradient_tolerance", f.gradient_tolerance},
              {"project_to_orthant", f.project_to_orthant},
              {"random_init", f.random_init}};
}

FitOptions fit_from_json(const Json& j) {
  reject_unknown(j, {"step_size", "max_iterations", "gradient_tolerance", "project_to_orthant", "random_init"},
                 "cone.fit");
  FitOptions f;
  f.step_size = get(j, "step_size", f.step_size);
  f.max_iterations = get_count(j, "max_iterations", f.max_iterations);
  f.gradient_tolerance = get(j, "gradient_tolerance", f.gradient_tolerance);
  f.project_to_orthant = get(j, "project_to_orthant", f.project_to_orthant);
  f.random_init = get(j, "random_init", f.random_init);
  if (f.step_size < 0.0) throw InvalidArgument("cone.fit.step_size must be >= 0 (0 selects 1/L)");
  if (f.max_iterations == 0) throw InvalidArgument("cone.fit.max_iterations must be positive");
  if (!(f.gradient_tolerance > 0.0)) throw InvalidArgument("cone.fit.gradient_tolerance must be positive");
  return f;
}

Json planner_to_json(const PlannerOptions& p) {
  return Json{{"tolerance", p.tolerance}, {"max_iterations", p.max_iterations}};
}

PlannerOptions planner_from_json(const Json& j) {
  reject_unknown(j, {"tolerance", "max_iterations"}, "planner");
  PlannerOptions p;
  p.tolerance = get(j, "tolerance", p.tolerance);
  p.max_iterations = get_count(j, "max_iterations", p.max_iterations);
  if (!(p.tolerance > 0.0)) throw InvalidArgument("planner.tolerance must be positive");
  return p;
}

std::vector<std::uint64_t> seeds_from_json(const Json& j) {
  std::vector<std::uint64_t> seeds;
  if (j.is_array()) {
    for (const auto& s : j) {
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
        throw InvalidArgument("seeds must be non-negative integers");
      seeds.push_back(s.get<std::uint64_t>());
    }
  } else if (j.is_object()) {
    reject_unknown(j, {"first", "count"}, "seeds");
    const std::size_t first = get_count(j, "first", 0), count = get_count(j, "count", 1);
    for (std::size_t i = 0; i < count; ++i) seeds.push_back(first + i);
  } else {
    throw InvalidArgument("seeds must be a list or {\"first\", \"count\"}");
  }
  return seeds;
}

}  // namespace

Json env_spec_to_json(const EnvSpec& spec) {
  Json params = Json::object();
  for (const auto& [k, v] : resolved_env_params(spec)) params[k] = v;
  return Json{{"name", to_string(spec.name)}, {"params", params}};
}

EnvSpec env_spec_from_json(const Json& j) {
  EnvSpec spec;
  if (j.is_string()) {
    spec.name = env_name_from_string(j.get<std::string>());
    return spec;
  }
  reject_unknown(j, {"name", "params"}, "env");
  if (!j.contains("name")) throw InvalidArgument("env.name is required");
  spec.name = env_name_from_string(get<std::string>(j, "name", ""));
  if (j.contains("params")) {
    const Json& params = j.at("params");
    if (!params.is_object()) throw InvalidArgument("env.params must be an object");
    for (const auto& item : params.items()) {
      if (!item.value().is_number()) throw InvalidArgument("env.params." + item.key() + " must be a number");
      spec.params[item.key()] = item.value().get<double>();
    }
    resolved_env_params(spec);
  }
  return spec;
}

Json config_to_json(const ExperimentConfig& c) {
  Json flags = Json::array();
  for (AblationFlag f : c.ablation_flags) flags.push_back(to_string(f));
  return Json{{"env", env_spec_to_json(c.env)},
              {"true_weight", c.true_weight},
              {"eta", c.eta},
              {"num_items", c.num_items},
              {"num_pairs", c.num_pairs},
              {"item_source", to_string(c.item_source)},
              {"rollout_horizon", c.rollout_horizon},
              {"num_directions", c.num_directions},
              {"cone",
               {{"num_bootstrap", c.cone.num_bootstrap},
                {"subset_fraction", c.cone.subset_fraction},
                {"fit", fit_to_json(c.cone.fit)}}},
              {"planner", planner_to_json(c.planner)},
              {"seeds", c.seeds},
              {"method", to_string(c.method)},
              {"ablation_flags", flags},
              {"threads", c.threads}};
}

namespace {

ExperimentConfig parse_experiment(const Json& j, std::initializer_list<const char*> extra_keys) {
  std::vector<const char*> keys = {"env",       "true_weight",  "eta",  "num_items", "num_pairs",
                                   "item_source", "rollout_horizon", "num_directions", "cone",
                                   "planner",   "seeds",        "method", "ablation_flags", "threads"};
  keys.insert(keys.end(), extra_keys.begin(), extra_keys.end());
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  for (const auto& item : j.items())
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; }) == keys.end())
      throw InvalidArgument("unknown key '" + item.key() + "' in config");

  ExperimentConfig c;
  if (!j.contains("env")) throw InvalidArgument("config key 'env' is required");
  c.env = env_spec_from_json(j.at("env"));
  c.true_weight = get(j, "true_weight", c.true_weight);
  c.eta = get(j, "eta", c.eta);
  c.num_items = get_count(j, "num_items", c.num_items);
  c.num_pairs = get_count(j, "num_pairs", c.num_pairs);
  c.item_source = item_source_from_string(get<std::string>(j, "item_source", to_string(c.item_source)));
  c.rollout_horizon = get_count(j, "rollout_horizon", c.rollout_horizon);
  c.num_directions = get_count(j, "num_directions", c.num_directions);
  if (j.contains("cone")) {
    const Json& cone = j.at("cone");
    reject_unknown(cone, {"num_bootstrap", "subset_fraction", "fit"}, "cone");
    c.cone.num_bootstrap = get_count(cone, "num_bootstrap", c.cone.num_bootstrap);
    c.cone.subset_fraction = get(cone, "subset_fraction", c.cone.subset_fraction);
    if (cone.contains("fit")) c.cone.fit = fit_from_json(cone.at("fit"));
  }
  if (j.contains("planner")) c.planner = planner_from_json(j.at("planner"));
  if (j.contains("seeds")) c.seeds = seeds_from_json(j.at("seeds"));
  c.method = method_from_string(get<std::string>(j, "method", to_string(c.method)));
  for (const auto& f : get<std::vector<std::string>>(j, "ablation_flags", {}))
    c.ablation_flags.insert(ablation_flag_from_string(f));
  c.threads = get_count(j, "threads", c.threads);
  const std::size_t d = build_env(c.env).num_objectives();
  if (c.true_weight.size() != d)
    throw InvalidArgument("true_weight has " + std::to_string(c.true_weight.size()) +
                          " components but the environment has " + std::to_string(d) + " objectives");
  c.validate();
  return c;
}

Json parse_file(const std::filesystem::path& path) {
  const std::string text = text::read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("cannot parse " + path.string() + ": " + e.what());
  }
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) { return parse_experiment(j, {}); }

ExperimentConfig load_config(const std::filesystem::path& path) { return config_from_json(parse_file(path)); }

Json sweep_config_to_json(const SweepConfig& c) {
  Json j = config_to_json(c.base);
  j["sweep_grid"] = c.n_grid;
  return j;
}

SweepConfig sweep_config_from_json(const Json& j) {
  SweepConfig c;
  c.base = parse_experiment(j, {"sweep_grid"});
  if (j.contains("sweep_grid")) {
    c.n_grid.clear();
    for (const auto& v : j.at("sweep_grid")) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() > 0))
        throw InvalidArgument("sweep_grid entries must be positive integers");
      c.n_grid.push_back(v.get<std::size_t>());
    }
  }
  if (c.n_grid.size() < 2) throw InvalidArgument("sweep_grid needs at least two entries");
  for (std::size_t i = 1; i < c.n_grid.size(); ++i)
    if (c.n_grid[i] <= c.n_grid[i - 1]) throw InvalidArgument("sweep_grid must be strictly increasing");
  return c;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  return sweep_config_from_json(parse_file(path));
}

SweepOptions sweep_options(const SweepConfig& c) {
  SweepOptions o;
  o.num_items = c.base.num_items;
  o.item_source = c.base.item_source;
  o.rollout_horizon = c.base.rollout_horizon;
  o.fit = c.base.cone.fit;
  o.planner = c.base.planner;
  return o;
}

}  // namespace moirl
