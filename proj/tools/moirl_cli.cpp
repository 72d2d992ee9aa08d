#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moirl/config_io.hpp"
#include "moirl/geometry.hpp"
#include "moirl/mdp_io.hpp"
#include "moirl/report.hpp"
#include "moirl/text_io.hpp"

namespace fs = std::filesystem;
using namespace moirl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitIo = 4;

/// A run directory or input file that must exist does not.
struct MissingInput : Error {
  using Error::Error;
};

fs::path output_root() {
  const char* root = std::getenv("MOIRL_OUTPUT_ROOT");
  return root && *root ? fs::path(root) : fs::path("moirl-out");
}

fs::path resolve_out(const std::string& flag, const std::string& fallback) {
  return flag.empty() ? output_root() / fallback : fs::path(flag);
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void say(bool verbose, const std::string& line) {
  if (verbose) std::cerr << line << "\n";
}

ExperimentConfig load_with_seed(const std::string& path, const std::optional<std::uint64_t>& seed) {
  if (!fs::exists(path)) throw InvalidArgument("config file not found: " + path);
  ExperimentConfig config = load_config(path);
  if (seed) config.seeds = {*seed};
  return config;
}

EnvParams parse_params(const std::vector<std::string>& pairs) {
  EnvParams params;
  for (const auto& p : pairs) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--param expects key=value, got '" + p + "'");
    try {
      params[p.substr(0, eq)] = text::parse_double(p.substr(eq + 1));
    } catch (const FormatError&) {
      throw InvalidArgument("--param value is not a number: '" + p + "'");
    }
  }
  return params;
}

Vector parse_vector(const std::string& csv) {
  Vector out;
  for (const auto& cell : text::split(csv)) {
    try {
      out.push_back(text::parse_double(cell));
    } catch (const FormatError&) {
      throw InvalidArgument("not a number list: '" + csv + "'");
    }
  }
  return out;
}

ConeEstimate read_cone(const fs::path& path) {
  if (!fs::exists(path)) throw MissingInput("cone file not found: " + path.string());
  const auto table = report::read_table(path);
  std::vector<std::size_t> w_cols;
  for (std::size_t k = 0;; ++k) {
    const std::string name = "w_" + std::to_string(k);
    if (std::find(table.header.begin(), table.header.end(), name) == table.header.end()) break;
    w_cols.push_back(table.column(name));
  }
  if (w_cols.empty() || table.rows.empty()) throw FormatError(path.string() + " holds no cone directions");
  const std::size_t hull_col = table.column("hull");
  ConeEstimate cone;
  for (const auto& row : table.rows) {
    Vector w;
    for (auto c : w_cols) w.push_back(row[c]);
    if (row[hull_col] != 0.0) cone.hull_rays.push_back(cone.directions.size());
    cone.directions.push_back(w);
  }
  if (cone.hull_rays.empty()) cone.hull_rays = extreme_rays(cone.directions);
  return cone;
}

Json cone_summary(const ConeEstimate& cone) {
  Json reports = Json::array();
  for (const auto& r : cone.fit_reports)
    reports.push_back(Json{{"final_loss", r.final_loss},
                           {"gradient_norm", r.gradient_norm},
                           {"iterations", r.iterations},
                           {"converged", r.converged},
                           {"on_boundary", r.on_boundary}});
  return Json{{"num_directions", cone.directions.size()},
              {"hull_rays", cone.hull_rays},
              {"mean_direction", cone.mean_direction()},
              {"degenerate_fits", cone.degenerate_fits},
              {"fit_reports", reports}};
}

std::string cone_table(const ConeEstimate& cone) {
  std::string out = "direction";
  for (std::size_t k = 0; k < cone.dimension(); ++k) out += ",w_" + std::to_string(k);
  out += ",hull\n";
  for (std::size_t i = 0; i < cone.directions.size(); ++i) {
    const bool hull = std::find(cone.hull_rays.begin(), cone.hull_rays.end(), i) != cone.hull_rays.end();
    out += std::to_string(i) + "," + text::join(cone.directions[i]) + "," + (hull ? "1" : "0") + "\n";
  }
  return out;
}

// ---------------------------------------------------------------- subcommands

struct Common {
  std::string out;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
};

int cmd_build_env(const Common& common, const std::string& env, const std::vector<std::string>& params) {
  Timer timer;
  EnvSpec spec{env_name_from_string(env), parse_params(params)};
  const MoMdp mdp = build_env(spec);
  const fs::path dir = resolve_out(common.out, "envs/" + env);
  report::ensure_directory(dir);
  save_mdp(mdp, dir / "mdp.json");
  Json summary{{"env", env_spec_to_json(spec)},
               {"num_states", mdp.num_states()},
               {"num_actions", mdp.num_actions()},
               {"num_objectives", mdp.num_objectives()},
               {"discount", mdp.discount()}};
  text::write_file(dir / "summary.json", report::dump(summary));
  report::write_metadata(dir, timer.seconds(), Json{{"subcommand", "build-env"}});
  say(common.verbose, "wrote " + (dir / "mdp.json").string());
  return kExitOk;
}

MoMdp mdp_for(const ExperimentConfig& config, const std::string& mdp_path) {
  if (mdp_path.empty()) return build_env(config.env);
  if (!fs::exists(mdp_path)) throw MissingInput("MDP file not found: " + mdp_path);
  return load_mdp(mdp_path);
}

int cmd_gen_data(const Common& common, const std::string& config_path, const std::string& mdp_path) {
  Timer timer;
  const ExperimentConfig config = load_with_seed(config_path, common.seed);
  const MoMdp mdp = mdp_for(config, mdp_path);
  const auto data =
      generate_dataset(mdp, config.dataset_options(), config.unit_true_weight(), config.seeds.front());
  const fs::path dir = resolve_out(common.out, "data/" + stem_of(config_path));
  report::ensure_directory(dir);
  save_dataset(data, dir / "dataset.csv");
  std::size_t wins = 0;
  for (const auto& p : data.pairs) wins += static_cast<std::size_t>(p.label);
  Json summary{{"config", config_to_json(config)},
               {"mdp", mdp_path.empty() ? Json(nullptr) : Json(mdp_path)},
               {"seed", config.seeds.front()},
               {"num_items", data.items.size()},
               {"num_pairs", data.pairs.size()},
               {"label_one_fraction", static_cast<double>(wins) / static_cast<double>(data.pairs.size())},
               {"log_likelihood_true", label_log_likelihood(data, config.unit_true_weight())}};
  text::write_file(dir / "summary.json", report::dump(summary));
  report::write_metadata(dir, timer.seconds(), Json{{"subcommand", "gen-data"}});
  say(common.verbose, "wrote " + (dir / "dataset.csv").string());
  return kExitOk;
}

int cmd_fit_cone(const Common& common, const std::string& data_path, const std::string& config_path) {
  Timer timer;
  if (!fs::exists(data_path)) throw MissingInput("dataset not found: " + data_path);
  ExperimentConfig config;
  if (!config_path.empty()) config = load_with_seed(config_path, common.seed);
  if (common.seed) config.seeds = {*common.seed};
  const auto data = load_dataset(data_path);
  const ConeEstimate cone = estimate_cone(data, config.cone, config.seeds.front());
  const fs::path dir = resolve_out(common.out, "cones/" + stem_of(fs::path(data_path).parent_path().string()));
  report::ensure_directory(dir);
  text::write_file(dir / "cone.csv", cone_table(cone));
  Json cone_opts{{"num_bootstrap", config.cone.num_bootstrap}, {"subset_fraction", config.cone.subset_fraction}};
  Json summary{{"dataset", data_path},
               {"seed", config.seeds.front()},
               {"cone_options", cone_opts},
               {"config", config_to_json(config)},
               {"cone", cone_summary(cone)}};
  if (data.true_weight) summary["angle_to_true_weight"] = angular_distance(cone.mean_direction(), *data.true_weight);
  text::write_file(dir / "summary.json", report::dump(summary));
  report::write_metadata(dir, timer.seconds(), Json{{"subcommand", "fit-cone"}});
  say(common.verbose, "wrote " + (dir / "cone.csv").string());
  return kExitOk;
}

int cmd_recover_front(const Common& common, const std::string& config_path, const std::string& mdp_path,
                      const std::string& cone_path, std::size_t num_directions) {
  Timer timer;
  const ExperimentConfig config = load_with_seed(config_path, common.seed);
  const MoMdp mdp = mdp_for(config, mdp_path);
  const ConeEstimate cone = read_cone(cone_path);
  if (cone.dimension() != mdp.num_objectives())
    throw InvalidArgument("cone dimension does not match the MDP's objective count");
  const std::size_t k = num_directions ? num_directions : config.num_directions;
  Rng rng(derive_seed(config.seeds.front(), 3));
  ParetoFrontEstimate front;
  std::vector<Vector> weights;
  for (std::size_t i = 0; i < k; ++i) {
    auto sol = solve_scalarized(mdp, sample_direction(cone, rng), config.planner);
    weights.push_back(sol.weight);
    front.insert(std::move(sol.vector_return), std::move(sol.weight), std::move(sol.policy));
  }
  RunResult run;
  run.label = "recover-front";
  SeedResult seed;
  seed.seed = config.seeds.front();
  seed.ok = true;
  seed.front = front;
  seed.inferred_weights = cone.directions;
  seed.sampled_weights = weights;
  seed.mean_weight = mean_inferred_weight(cone.directions);
  seed.metrics = compute_metrics(front, cone.directions, config.unit_true_weight());
  run.seeds.push_back(seed);
  const fs::path dir = resolve_out(common.out, "fronts/" + stem_of(config_path));
  report::ensure_directory(dir);
  text::write_file(dir / "front.csv", report::front_csv(run));
  Json metrics = Json::object();
  for (const auto& m : metric_names()) metrics[m] = metric_value(seed.metrics, m);
  Json summary{{"config", config_to_json(config)},
               {"cone", cone_path},
               {"num_directions", k},
               {"num_pareto_points", front.size()},
               {"metrics", metrics}};
  text::write_file(dir / "summary.json", report::dump(summary));
  report::write_metadata(dir, timer.seconds(), Json{{"subcommand", "recover-front"}});
  say(common.verbose, "wrote " + (dir / "front.csv").string());
  return kExitOk;
}

int cmd_run_experiment(const Common& common, const std::string& config_path) {
  Timer timer;
  const ExperimentConfig config = load_with_seed(config_path, common.seed);
  const MoMdp mdp = build_env(config.env);
  const RunResult run = run_method(config, mdp);
  const fs::path dir = resolve_out(common.out, "runs/" + stem_of(config_path));
  report::write_run(dir, run, config_to_json(config));
  report::write_metadata(dir, timer.seconds(),
                         Json{{"subcommand", "run-experiment"}, {"harness_wall_seconds", run.wall_time_seconds}});
  say(common.verbose, "wrote " + dir.string());
  std::cout << report::aggregate_csv(run);
  return kExitOk;
}

int cmd_ablate(const Common& common, const std::string& config_path, const std::vector<std::string>& flag_names) {
  Timer timer;
  const ExperimentConfig config = load_with_seed(config_path, common.seed);
  std::vector<AblationFlag> flags;
  for (const auto& f : flag_names) flags.push_back(ablation_flag_from_string(f));
  if (flags.empty()) flags = all_ablation_flags();
  const MoMdp mdp = build_env(config.env);
  const AblationResult result = run_ablation(config, mdp, flags);
  const fs::path dir = resolve_out(common.out, "ablations/" + stem_of(config_path));
  report::ensure_directory(dir);
  text::write_file(dir / "ablation.csv", report::ablation_csv(result));
  Json arms = Json::object();
  for (const auto& [name, run] : result.arms) {
    ExperimentConfig arm = config;
    arm.method = Method::MoIrl;
    arm.ablation_flags.clear();
    if (name != "full") arm.ablation_flags = {ablation_flag_from_string(name)};
    report::write_run(dir / name, run, config_to_json(arm));
    Json entry{{"metrics", report::aggregate_json(run)}, {"failed_seeds", run.failed_seeds}};
    if (auto it = result.p_values.find(name); it != result.p_values.end()) entry["p_values"] = it->second;
    arms[name] = entry;
  }
  text::write_file(dir / "summary.json", report::dump(Json{{"config", config_to_json(config)}, {"arms", arms}}));
  report::write_metadata(dir, timer.seconds(), Json{{"subcommand", "ablate"}});
  say(common.verbose, "wrote " + dir.string());
  std::cout << report::ablation_csv(result);
  return kExitOk;
}

int cmd_baselines(const Common& common, const std::string& config_path, const std::vector<std::string>& names) {
  Timer timer;
  const ExperimentConfig config = load_with_seed(config_path, common.seed);
  std::vector<Method> methods;
  for (const auto& n : names) methods.push_back(method_from_string(n));
  if (methods.empty())
    methods = {Method::MoIrl, Method::RandomScalarization, Method::StaticDirichlet, Method::LogisticSingle};
  const MoMdp mdp = build_env(config.env);
  const fs::path dir = resolve_out(common.out, "baselines/" + stem_of(config_path));
  report::ensure_directory(dir);
  std::string table = "method,metric,mean,std,ci95,count\n";
  Json entries = Json::object();
  for (Method m : methods) {
    ExperimentConfig c = config;
    c.method = m;
    c.ablation_flags.clear();
    const RunResult run = run_method(c, mdp);
    report::write_run(dir / to_string(m), run, config_to_json(c));
    for (const auto& metric : metric_names()) {
      const auto& a = run.aggregate.at(metric);
      table += to_string(m) + "," + metric + "," + text::format_double(a.mean) + "," + text::format_double(a.std) +
               "," + text::format_double(a.ci95) + "," + std::to_string(a.count) + "\n";
    }
    entries[to_string(m)] = Json{{"metrics", report::aggregate_json(run)}, {"failed_seeds", run.failed_seeds}};
  }
  text::write_file(dir / "baselines.csv", table);
  text::write_file(dir / "summary.json", report::dump(Json{{"config", config_to_json(config)}, {"methods", entries}}));
  report::write_metadata(dir, timer.seconds(), Json{{"subcommand", "baselines"}});
  say(common.verbose, "wrote " + dir.string());
  std::cout << table;
  return kExitOk;
}

int cmd_sweep(const Common& common, const std::string& config_path, const std::vector<std::size_t>& grid) {
  Timer timer;
  if (!fs::exists(config_path)) throw InvalidArgument("config file not found: " + config_path);
  SweepConfig config = load_sweep_config(config_path);
  if (common.seed) config.base.seeds = {*common.seed};
  if (!grid.empty()) config.n_grid = grid;
  const MoMdp mdp = build_env(config.base.env);
  const SweepResult result = run_sample_sweep(mdp, config.base.unit_true_weight(), config.base.eta, config.n_grid,
                                              config.base.seeds, sweep_options(config));
  const fs::path dir = resolve_out(common.out, "sweeps/" + stem_of(config_path));
  report::ensure_directory(dir);
  text::write_file(dir / "sweep.csv", report::sweep_csv(result));
  text::write_file(dir / "summary.json",
                   report::dump(Json{{"config", sweep_config_to_json(config)}, {"slope", result.slope}}));
  report::write_metadata(dir, timer.seconds(), Json{{"subcommand", "sweep-samples"}});
  say(common.verbose, "wrote " + dir.string());
  std::cout << report::sweep_csv(result) << "slope," << text::format_double(result.slope) << "\n";
  return kExitOk;
}

int cmd_regret(const Common& common, const std::string& config_path) {
  Timer timer;
  const ExperimentConfig config = load_with_seed(config_path, common.seed);
  const MoMdp mdp = build_env(config.env);
  const RunResult run = run_method(config, mdp);
  const fs::path dir = resolve_out(common.out, "regret/" + stem_of(config_path));
  report::ensure_directory(dir);
  text::write_file(dir / "regret.csv", report::regret_csv(run));
  std::string per_seed = "seed,t,cumulative_regret\n";
  for (const auto& s : run.seeds)
    for (std::size_t t = 0; t < s.cumulative_regret.size(); ++t)
      per_seed += std::to_string(s.seed) + "," + std::to_string(t + 1) + "," +
                  text::format_double(s.cumulative_regret[t]) + "\n";
  text::write_file(dir / "regret_seeds.csv", per_seed);
  text::write_file(dir / "summary.json", report::dump(Json{{"config", config_to_json(config)},
                                                           {"horizon", run.regret_curve.size()},
                                                           {"final_cumulative_regret",
                                                            run.regret_curve.empty()
                                                                ? Json(nullptr)
                                                                : Json(run.regret_curve.back().second)}}));
  report::write_metadata(dir, timer.seconds(), Json{{"subcommand", "regret"}});
  say(common.verbose, "wrote " + dir.string());
  std::cout << report::regret_csv(run);
  return kExitOk;
}

std::string svg_scatter(const std::vector<Vector>& pts, const std::vector<std::size_t>& hull) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& p : pts) x0 = std::min(x0, p[0]), x1 = std::max(x1, p[0]), y0 = std::min(y0, p[1]), y1 = std::max(y1, p[1]);
  const double w = 400, h = 400, m = 40;
  const double sx = x1 > x0 ? (w - 2 * m) / (x1 - x0) : 1.0, sy = y1 > y0 ? (h - 2 * m) / (y1 - y0) : 1.0;
  auto X = [&](double x) { return text::format_double(m + (x - x0) * sx); };
  auto Y = [&](double y) { return text::format_double(h - m - (y - y0) * sy); };
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\">\n";
  out += "<rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
  if (hull.size() >= 3) {
    out += "<polygon fill=\"none\" stroke=\"gray\" points=\"";
    for (auto i : hull) out += X(pts[i][0]) + "," + Y(pts[i][1]) + " ";
    out += "\"/>\n";
  }
  for (const auto& p : pts) out += "<circle cx=\"" + X(p[0]) + "\" cy=\"" + Y(p[1]) + "\" r=\"3\" fill=\"black\"/>\n";
  out += "<text x=\"200\" y=\"395\" text-anchor=\"middle\" font-size=\"12\">objective 0</text>\n";
  out += "<text x=\"12\" y=\"200\" font-size=\"12\" transform=\"rotate(-90 12 200)\" text-anchor=\"middle\">objective 1</text>\n";
  return out + "</svg>\n";
}

int cmd_export(const Common& common, const std::string& run_dir, const std::string& sweep_dir, bool svg) {
  Timer timer;
  if (!fs::is_directory(run_dir)) throw MissingInput("run directory not found: " + run_dir);
  const fs::path front_path = fs::path(run_dir) / "front.csv";
  if (!fs::exists(front_path)) throw MissingInput("no front.csv in " + run_dir);
  const auto table = report::read_table(front_path);
  std::size_t d = 0;
  while (std::find(table.header.begin(), table.header.end(), "v_" + std::to_string(d)) != table.header.end()) ++d;
  if (d == 0) throw FormatError(front_path.string() + " has no return columns");

  std::vector<Vector> values, weights;
  std::vector<std::uint64_t> seeds, ids;
  for (const auto& row : table.rows) {
    Vector v, w;
    for (std::size_t k = 0; k < d; ++k) {
      v.push_back(row[table.column("v_" + std::to_string(k))]);
      w.push_back(row[table.column("w_" + std::to_string(k))]);
    }
    values.push_back(v);
    weights.push_back(w);
    seeds.push_back(static_cast<std::uint64_t>(row[table.column("seed")]));
    ids.push_back(static_cast<std::uint64_t>(row[table.column("point")]));
  }

  std::vector<bool> pooled(values.size(), false), per_seed(values.size(), false);
  if (d <= 3)
    for (auto h : geometry::convex_hull_vertices(values))
      for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] == values[h]) pooled[i] = true;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && seeds[j] == seeds[i]) ++j;
    const std::vector<Vector> group(values.begin() + static_cast<std::ptrdiff_t>(i),
                                    values.begin() + static_cast<std::ptrdiff_t>(j));
    if (d <= 3)
      for (auto k : geometry::convex_hull_vertices(group)) per_seed[i + k] = true;
    i = j;
  }
  const bool degenerate = values.size() <= d || geometry::affine_rank(values) < d;

  const fs::path dir = resolve_out(common.out, "figures/" + fs::path(run_dir).filename().string());
  report::ensure_directory(dir);
  std::string pareto = "seed,point";
  for (std::size_t k = 0; k < d; ++k) pareto += ",v_" + std::to_string(k);
  pareto += ",hull_pooled,hull_seed\n";
  std::string tradeoff = "seed,point";
  for (std::size_t k = 0; k < d; ++k) tradeoff += ",weight_" + std::to_string(k);
  for (std::size_t k = 0; k < d; ++k) tradeoff += ",v_" + std::to_string(k);
  tradeoff += "\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string key = std::to_string(seeds[i]) + "," + std::to_string(ids[i]);
    pareto += key + "," + text::join(values[i]) + "," + (pooled[i] ? "1" : "0") + "," + (per_seed[i] ? "1" : "0") + "\n";
    tradeoff += key + "," + text::join(simplex_normalized(weights[i])) + "," + text::join(values[i]) + "\n";
  }
  text::write_file(dir / "pareto_points.csv", pareto);
  text::write_file(dir / "tradeoff.csv", tradeoff);

  Json summary{{"run", run_dir}, {"num_points", values.size()}, {"dimension", d}, {"degenerate_hull", degenerate}};
  const fs::path sweep = sweep_dir.empty() ? fs::path(run_dir) / "sweep.csv" : fs::path(sweep_dir) / "sweep.csv";
  if (fs::exists(sweep)) {
    text::write_file(dir / "sweep.csv", text::read_file(sweep));
    summary["sweep"] = sweep.string();
  } else if (!sweep_dir.empty()) {
    throw MissingInput("no sweep.csv in " + sweep_dir);
  }
  if (svg && d == 2) {
    std::vector<std::size_t> hull;
    if (!degenerate) hull = geometry::convex_hull_2d(values);
    text::write_file(dir / "pareto.svg", svg_scatter(values, hull));
    summary["svg"] = "pareto.svg";
  }
  text::write_file(dir / "summary.json", report::dump(summary));
  report::write_metadata(dir, timer.seconds(), Json{{"subcommand", "export-figure-data"}});
  say(common.verbose, "wrote " + dir.string());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preference-based multi-objective IRL: cone estimation and Pareto front recovery"};
  app.require_subcommand(1);
  Common common;
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--out", common.out, "Output directory (default: $MOIRL_OUTPUT_ROOT/...)");
    sub->add_option("--seed", seed_value, "Replace the config's seeds with this single seed");
    sub->add_flag("-v,--verbose", common.verbose, "Log progress to stderr");
  };

  std::string env, config_path, mdp_path, data_path, cone_path, run_dir, sweep_dir;
  std::vector<std::string> params, flags, methods;
  std::vector<std::size_t> grid;
  std::size_t num_directions = 0;
  bool svg = false;

  auto* build = app.add_subcommand("build-env", "Build an environment and write its MDP file");
  build->add_option("--env", env, "thermostat2d | thermostat3d | gridworld3d")->required();
  build->add_option("--param", params, "Override a constant, key=value (repeatable)");
  add_common(build);

  auto* gen = app.add_subcommand("gen-data", "Simulate a preference dataset");
  gen->add_option("-c,--config", config_path, "Experiment config (JSON)")->required();
  gen->add_option("--mdp", mdp_path, "Use this MDP file instead of the config's environment");
  add_common(gen);

  auto* fit = app.add_subcommand("fit-cone", "Estimate the preference cone from a dataset");
  fit->add_option("--data", data_path, "Dataset file written by gen-data")->required();
  fit->add_option("-c,--config", config_path, "Config supplying cone options");
  add_common(fit);

  auto* recover = app.add_subcommand("recover-front", "Sample directions from a cone and build the front");
  recover->add_option("-c,--config", config_path, "Experiment config (JSON)")->required();
  recover->add_option("--cone", cone_path, "cone.csv written by fit-cone")->required();
  recover->add_option("--mdp", mdp_path, "Use this MDP file instead of the config's environment");
  recover->add_option("-K,--num-directions", num_directions, "Directions to sample (default: config)");
  add_common(recover);

  auto* run = app.add_subcommand("run-experiment", "Run the configured method over all seeds");
  run->add_option("-c,--config", config_path, "Experiment config (JSON)")->required();
  add_common(run);

  auto* ablate = app.add_subcommand("ablate", "Full pipeline against ablated arms");
  ablate->add_option("-c,--config", config_path, "Experiment config (JSON)")->required();
  ablate->add_option("--flags", flags, "Arms to run (default: all)")->delimiter(',');
  add_common(ablate);

  auto* base = app.add_subcommand("baselines", "Compare mo_irl with the baselines on paired datasets");
  base->add_option("-c,--config", config_path, "Experiment config (JSON)")->required();
  base->add_option("--methods", methods, "Methods to run (default: all four)")->delimiter(',');
  add_common(base);

  auto* sweep = app.add_subcommand("sweep-samples", "Angular error of a single fit against the number of pairs");
  sweep->add_option("-c,--config", config_path, "Experiment config with optional sweep_grid")->required();
  sweep->add_option("--grid", grid, "Pair counts, increasing")->delimiter(',');
  add_common(sweep);

  auto* regret = app.add_subcommand("regret", "Cumulative regret of the chosen policies");
  regret->add_option("-c,--config", config_path, "Experiment config (JSON)")->required();
  add_common(regret);

  auto* exp = app.add_subcommand("export-figure-data", "Figure-ready tables from a finished run");
  exp->add_option("--run", run_dir, "Run directory written by run-experiment")->required();
  exp->add_option("--sweep", sweep_dir, "Directory holding sweep.csv");
  exp->add_flag("--svg", svg, "Also write a 2D scatter/hull SVG");
  add_common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (auto* sub : app.get_subcommands())
      if (sub->count("--seed")) common.seed = seed_value;
    if (build->parsed()) return cmd_build_env(common, env, params);
    if (gen->parsed()) return cmd_gen_data(common, config_path, mdp_path);
    if (fit->parsed()) return cmd_fit_cone(common, data_path, config_path);
    if (recover->parsed()) return cmd_recover_front(common, config_path, mdp_path, cone_path, num_directions);
    if (run->parsed()) return cmd_run_experiment(common, config_path);
    if (ablate->parsed()) return cmd_ablate(common, config_path, flags);
    if (base->parsed()) return cmd_baselines(common, config_path, methods);
    if (sweep->parsed()) return cmd_sweep(common, config_path, grid);
    if (regret->parsed()) return cmd_regret(common, config_path);
    if (exp->parsed()) return cmd_export(common, run_dir, sweep_dir, svg);
  } catch (const MissingInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n" << app.help();
    return kExitConfig;
  } catch (const DegenerateError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const ConvergenceError& e) {
    std::cerr << "did not converge: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const FormatError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitConfig;
}
