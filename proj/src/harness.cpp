#include "moirl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

namespace moirl {
namespace {

// Stream identifiers for derive_seed; fixed so that every method sees the same
// dataset for a given seed.
constexpr std::uint64_t kDataStream = 1;
constexpr std::uint64_t kConeStream = 2;
constexpr std::uint64_t kDirectionStream = 3;
constexpr std::uint64_t kBaselineStream = 4;
constexpr std::uint64_t kStaticStream = 5;

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
}

void plan_directions(const MoMdp& mdp, const std::vector<Vector>& directions, const PlannerOptions& planner,
                     SeedResult& out, std::vector<Policy>& chosen) {
  for (const auto& w : directions) {
    ScalarizedSolution sol = solve_scalarized(mdp, w, planner);
    out.sampled_weights.push_back(sol.weight);
    chosen.push_back(sol.policy);
    out.front.insert(std::move(sol.vector_return), std::move(sol.weight), std::move(sol.policy));
  }
}

void finish_seed(const ExperimentConfig& config, const MoMdp& mdp, const std::vector<Policy>& chosen, bool raw_l1,
                 SeedResult& out) {
  const Vector truth = config.unit_true_weight();
  out.metrics = compute_metrics(out.front, out.inferred_weights, truth, {raw_l1});
  out.mean_weight = mean_inferred_weight(out.inferred_weights, raw_l1);
  for (const auto& point : regret_curve(mdp, truth, chosen, config.planner))
    out.cumulative_regret.push_back(point.cumulative);
  out.ok = true;
}

// Signed, normalized difference vectors: one point estimate per informative pair.
std::vector<Vector> pointwise_directions(const PreferenceDataset& data) {
  std::vector<Vector> out;
  for (const auto& p : data.pairs) {
    const double n = norm(p.delta);
    if (n == 0.0) continue;
    out.push_back(scaled(p.delta, (p.label == 1 ? 1.0 : -1.0) / n));
  }
  return out;
}

SeedResult run_mo_irl_seed(const ExperimentConfig& config, const MoMdp& mdp, std::uint64_t seed) {
  SeedResult out;
  out.seed = seed;
  const auto& flags = config.ablation_flags;
  DatasetOptions data_options = config.dataset_options();
  if (flags.count(AblationFlag::LowK)) data_options.num_pairs = std::max<std::size_t>(1, config.num_pairs / 4);
  const PreferenceDataset data =
      generate_dataset(mdp, data_options, config.unit_true_weight(), derive_seed(seed, kDataStream));

  std::size_t k = config.num_directions;
  if (flags.count(AblationFlag::PartialSampling)) k = std::max<std::size_t>(1, k / 4);
  Rng direction_rng(derive_seed(seed, kDirectionStream));
  std::vector<Vector> directions;
  bool raw_l1 = false;

  if (flags.count(AblationFlag::NoDirectionEst)) {
    out.inferred_weights = pointwise_directions(data);
    if (out.inferred_weights.empty()) throw DegenerateError("no informative pair for pointwise inference");
    raw_l1 = true;
    if (flags.count(AblationFlag::NoSampling)) {
      directions.push_back(normalized(mean_inferred_weight(out.inferred_weights, true)));
    } else {
      for (std::size_t i = 0; i < k; ++i)
        directions.push_back(out.inferred_weights[uniform_index(direction_rng, out.inferred_weights.size())]);
    }
  } else {
    ConeOptions cone_options = config.cone;
    if (flags.count(AblationFlag::SmallSubsetSize)) cone_options.subset_fraction = 0.3;
    ConeEstimate cone = estimate_cone(data, cone_options, derive_seed(seed, kConeStream));
    out.inferred_weights = cone.directions;
    if (flags.count(AblationFlag::NoSampling)) {
      directions.push_back(cone.mean_direction());
    } else {
      for (std::size_t i = 0; i < k; ++i) directions.push_back(sample_direction(cone, direction_rng));
    }
    out.cone = std::move(cone);
  }

  std::vector<Policy> chosen;
  plan_directions(mdp, directions, config.planner, out, chosen);
  finish_seed(config, mdp, chosen, raw_l1, out);
  return out;
}

std::vector<Vector> static_weights(const ExperimentConfig& config, std::size_t dim) {
  Rng rng(derive_seed(config.seeds.front(), kStaticStream));
  std::vector<Vector> out;
  for (std::size_t i = 0; i < config.num_directions; ++i) out.push_back(sample_dirichlet(rng, dim));
  return out;
}

SeedResult run_baseline_seed(const ExperimentConfig& config, const MoMdp& mdp, std::uint64_t seed,
                             const std::vector<Vector>& fixed_weights) {
  SeedResult out;
  out.seed = seed;
  const PreferenceDataset data =
      generate_dataset(mdp, config.dataset_options(), config.unit_true_weight(), derive_seed(seed, kDataStream));
  std::vector<Vector> directions;
  switch (config.method) {
    case Method::RandomScalarization: {
      Rng rng(derive_seed(seed, kBaselineStream));
      for (std::size_t i = 0; i < config.num_directions; ++i)
        directions.push_back(sample_dirichlet(rng, mdp.num_objectives()));
      break;
    }
    case Method::StaticDirichlet:
      directions = fixed_weights;
      break;
    case Method::LogisticSingle:
      directions.push_back(fit_direction(data, config.cone.fit, derive_seed(seed, kConeStream)).direction);
      break;
    case Method::MoIrl:
      throw InvalidArgument("run_baseline called with method mo_irl");
  }
  out.inferred_weights = directions;
  std::vector<Policy> chosen;
  plan_directions(mdp, directions, config.planner, out, chosen);
  finish_seed(config, mdp, chosen, false, out);
  return out;
}

template <typename SeedFn>
RunResult run_seeds(const ExperimentConfig& config, std::string label, SeedFn&& per_seed) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.label = std::move(label);
  result.seeds.resize(config.seeds.size());
  parallel_for(config.seeds.size(), config.threads, [&](std::size_t i) {
    try {
      result.seeds[i] = per_seed(config.seeds[i]);
    } catch (const Error& e) {
      result.seeds[i] = SeedResult{};
      result.seeds[i].seed = config.seeds[i];
      result.seeds[i].error = e.what();
    }
  });

  std::size_t horizon = 0;
  for (const auto& s : result.seeds) {
    if (!s.ok) {
      ++result.failed_seeds;
      continue;
    }
    horizon = std::max(horizon, s.cumulative_regret.size());
  }
  if (result.failed_seeds == result.seeds.size())
    throw DegenerateError("all " + std::to_string(result.seeds.size()) + " seeds failed; first error: " +
                          result.seeds.front().error);
  for (const auto& name : metric_names()) result.aggregate[name] = summarize(result.metric_values(name));
  for (std::size_t t = 0; t < horizon; ++t) {
    double total = 0.0;
    std::size_t count = 0;
    for (const auto& s : result.seeds)
      if (s.ok && t < s.cumulative_regret.size()) total += s.cumulative_regret[t], ++count;
    result.regret_curve.emplace_back(t + 1, total / static_cast<double>(count));
  }
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::MoIrl: return "mo_irl";
    case Method::RandomScalarization: return "random_scalarization";
    case Method::StaticDirichlet: return "static_dirichlet";
    case Method::LogisticSingle: return "logistic_single";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  for (Method m : {Method::MoIrl, Method::RandomScalarization, Method::StaticDirichlet, Method::LogisticSingle})
    if (to_string(m) == name) return m;
  throw InvalidArgument("unknown method '" + name + "'");
}

std::string to_string(AblationFlag flag) {
  switch (flag) {
    case AblationFlag::NoSampling: return "no_sampling";
    case AblationFlag::PartialSampling: return "partial_sampling";
    case AblationFlag::NoDirectionEst: return "no_direction_est";
    case AblationFlag::LowK: return "low_K";
    case AblationFlag::SmallSubsetSize: return "small_subset_size";
  }
  return "unknown";
}

AblationFlag ablation_flag_from_string(const std::string& name) {
  for (AblationFlag f : all_ablation_flags())
    if (to_string(f) == name) return f;
  throw InvalidArgument("unknown ablation flag '" + name + "'");
}

const std::vector<AblationFlag>& all_ablation_flags() {
  static const std::vector<AblationFlag> flags = {AblationFlag::NoSampling, AblationFlag::PartialSampling,
                                                  AblationFlag::NoDirectionEst, AblationFlag::LowK,
                                                  AblationFlag::SmallSubsetSize};
  return flags;
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");
  if (num_directions == 0) throw InvalidArgument("K (num_directions) must be at least 1");
  if (num_items < 2) throw InvalidArgument("num_items must be at least 2");
  if (num_pairs == 0) throw InvalidArgument("num_pairs must be positive");
  if (!(eta > 0.0)) throw InvalidArgument("eta must be positive");
  if (cone.num_bootstrap == 0) throw InvalidArgument("num_bootstrap must be positive");
  if (!(cone.subset_fraction > 0.0 && cone.subset_fraction <= 1.0))
    throw InvalidArgument("subset_fraction must lie in (0, 1]");
  if (!all_finite(true_weight) || !(norm(true_weight) > 0.0)) throw InvalidArgument("true weight must be non-zero");
  for (double x : true_weight)
    if (x < 0.0) throw InvalidArgument("true weight must be non-negative");
  if (method != Method::MoIrl && !ablation_flags.empty())
    throw InvalidArgument("ablation flags only apply to mo_irl");
  if (ablation_flags.count(AblationFlag::NoSampling) && ablation_flags.count(AblationFlag::PartialSampling))
    throw InvalidArgument("no_sampling and partial_sampling are mutually exclusive");
}

Vector ExperimentConfig::unit_true_weight() const { return normalized(true_weight); }

DatasetOptions ExperimentConfig::dataset_options() const {
  DatasetOptions o;
  o.num_items = num_items;
  o.num_pairs = num_pairs;
  o.eta = eta;
  o.item_source = item_source;
  o.rollout_horizon = rollout_horizon;
  o.planner = planner;
  return o;
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(values.size());
  if (values.size() < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  const boost::math::students_t dist(static_cast<double>(values.size() - 1));
  s.ci95 = boost::math::quantile(dist, 0.975) * s.std / std::sqrt(static_cast<double>(values.size()));
  return s;
}

std::vector<double> RunResult::metric_values(const std::string& metric) const {
  std::vector<double> out;
  for (const auto& s : seeds)
    if (s.ok) out.push_back(metric_value(s.metrics, metric));
  return out;
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {"pref_l1_error", "cosine_similarity", "diversity_l2_spread",
                                                 "smoothness_convex_volume", "num_pareto_points"};
  return names;
}

double metric_value(const FrontMetrics& m, const std::string& name) {
  if (name == "pref_l1_error") return m.pref_l1_error;
  if (name == "cosine_similarity") return m.cosine_similarity;
  if (name == "diversity_l2_spread") return m.diversity_l2_spread;
  if (name == "smoothness_convex_volume") return m.smoothness_convex_volume;
  if (name == "num_pareto_points") return static_cast<double>(m.num_pareto_points);
  throw InvalidArgument("unknown metric '" + name + "'");
}

RunResult run_algorithm1(const ExperimentConfig& config, const MoMdp& mdp) {
  config.validate();
  if (config.method != Method::MoIrl) throw InvalidArgument("run_algorithm1 requires method mo_irl");
  return run_seeds(config, to_string(Method::MoIrl),
                   [&](std::uint64_t seed) { return run_mo_irl_seed(config, mdp, seed); });
}

RunResult run_baseline(const ExperimentConfig& config, const MoMdp& mdp) {
  config.validate();
  if (config.method == Method::MoIrl) throw InvalidArgument("run_baseline requires a baseline method");
  const auto fixed = config.method == Method::StaticDirichlet ? static_weights(config, mdp.num_objectives())
                                                              : std::vector<Vector>{};
  return run_seeds(config, to_string(config.method),
                   [&](std::uint64_t seed) { return run_baseline_seed(config, mdp, seed, fixed); });
}

RunResult run_method(const ExperimentConfig& config, const MoMdp& mdp) {
  return config.method == Method::MoIrl ? run_algorithm1(config, mdp) : run_baseline(config, mdp);
}

WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) throw InvalidArgument("Welch's t-test needs two samples of size >= 2");
  const MetricSummary sa = summarize(a), sb = summarize(b);
  const double va = sa.std * sa.std / static_cast<double>(a.size());
  const double vb = sb.std * sb.std / static_cast<double>(b.size());
  WelchResult r;
  if (va + vb == 0.0) {
    r.p_value = sa.mean == sb.mean ? 1.0 : 0.0;
    r.t = sa.mean == sb.mean ? 0.0 : std::copysign(INFINITY, sa.mean - sb.mean);
    r.df = static_cast<double>(a.size() + b.size() - 2);
    return r;
  }
  r.t = (sa.mean - sb.mean) / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) /
         (va * va / static_cast<double>(a.size() - 1) + vb * vb / static_cast<double>(b.size() - 1));
  const boost::math::students_t dist(r.df);
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  return r;
}

AblationResult run_ablation(const ExperimentConfig& config, const MoMdp& mdp, const std::vector<AblationFlag>& flags) {
  AblationResult result;
  ExperimentConfig full = config;
  full.method = Method::MoIrl;
  full.ablation_flags.clear();
  result.arms.emplace("full", run_algorithm1(full, mdp));
  const RunResult& reference = result.arms.at("full");
  for (AblationFlag flag : flags) {
    ExperimentConfig arm = full;
    arm.ablation_flags = {flag};
    RunResult run = run_algorithm1(arm, mdp);
    run.label = to_string(flag);
    auto& p = result.p_values[to_string(flag)];
    for (const auto& metric : metric_names()) {
      const auto a = run.metric_values(metric), b = reference.metric_values(metric);
      p[metric] = (a.size() >= 2 && b.size() >= 2) ? welch_t_test(a, b).p_value : 1.0;
    }
    result.arms.emplace(to_string(flag), std::move(run));
  }
  return result;
}

SweepResult run_sample_sweep(const MoMdp& mdp, std::span<const double> true_weight, double eta,
                             const std::vector<std::size_t>& n_grid, const std::vector<std::uint64_t>& seeds,
                             const SweepOptions& options) {
  if (n_grid.size() < 2) throw InvalidArgument("the sample grid needs at least two entries");
  if (!std::is_sorted(n_grid.begin(), n_grid.end()) ||
      std::adjacent_find(n_grid.begin(), n_grid.end()) != n_grid.end())
    throw InvalidArgument("the sample grid must be strictly increasing");
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");
  const Vector truth = normalized(true_weight);

  SweepResult result;
  for (std::size_t n : n_grid) {
    DatasetOptions data_options;
    data_options.num_items = options.num_items;
    data_options.num_pairs = n;
    data_options.eta = eta;
    data_options.item_source = options.item_source;
    data_options.rollout_horizon = options.rollout_horizon;
    data_options.planner = options.planner;
    std::vector<double> errors;
    for (std::uint64_t seed : seeds) {
      const auto data = generate_dataset(mdp, data_options, truth, derive_seed(seed, kDataStream, n));
      try {
        errors.push_back(angular_distance(fit_direction(data, options.fit, seed).direction, truth));
      } catch (const DegenerateError&) {
      }
    }
    const MetricSummary s = summarize(errors);
    result.rows.push_back({n, s.mean, s.std, s.count});
  }

  double mx = 0.0, my = 0.0;
  for (const auto& r : result.rows) mx += std::log(static_cast<double>(r.num_pairs)), my += std::log(r.mean_error);
  mx /= static_cast<double>(result.rows.size());
  my /= static_cast<double>(result.rows.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& r : result.rows) {
    const double dx = std::log(static_cast<double>(r.num_pairs)) - mx;
    sxy += dx * (std::log(r.mean_error) - my);
    sxx += dx * dx;
  }
  result.slope = sxy / sxx;
  return result;
}

std::vector<RegretPoint> regret_curve(const MoMdp& mdp, std::span<const double> true_weight,
                                      const std::vector<Policy>& chosen_policies, const PlannerOptions& planner) {
  if (std::abs(norm(true_weight) - 1.0) > 1e-6) throw InvalidArgument("true weight must have unit norm");
  const double best = solve_scalarized(mdp, true_weight, planner).scalar_value;
  std::vector<RegretPoint> out;
  double total = 0.0;
  for (std::size_t t = 0; t < chosen_policies.size(); ++t) {
    total += best - dot(true_weight, evaluate_policy(mdp, chosen_policies[t], {planner.tolerance}).values);
    out.push_back({t + 1, total});
  }
  return out;
}

}  // namespace moirl
