#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "moirl/cone.hpp"
#include "moirl/envs.hpp"
#include "moirl/oracle.hpp"
#include "moirl/pareto.hpp"
#include "moirl/planner.hpp"

namespace moirl {

enum class Method { MoIrl, RandomScalarization, StaticDirichlet, LogisticSingle };
enum class AblationFlag { NoSampling, PartialSampling, NoDirectionEst, LowK, SmallSubsetSize };

std::string to_string(Method method);
Method method_from_string(const std::string& name);
std::string to_string(AblationFlag flag);
AblationFlag ablation_flag_from_string(const std::string& name);
const std::vector<AblationFlag>& all_ablation_flags();

struct ExperimentConfig {
  EnvSpec env{};
  /// Ground-truth preference; normalized to unit L2 length wherever it is used.
  Vector true_weight{0.3, 0.7};
  double eta = 5.0;
  std::size_t num_items = 60;
  std::size_t num_pairs = 60;
  ItemSource item_source = ItemSource::PolicyReturn;
  std::size_t rollout_horizon = 100;
  /// K: scalarization directions sampled from the estimated cone.
  std::size_t num_directions = 24;
  ConeOptions cone{};
  PlannerOptions planner{};
  std::vector<std::uint64_t> seeds{0};
  Method method = Method::MoIrl;
  std::set<AblationFlag> ablation_flags;
  /// Worker threads for seed-level parallelism; 0 = hardware concurrency.
  std::size_t threads = 0;

  /// Throws InvalidArgument on an unusable configuration.
  void validate() const;
  Vector unit_true_weight() const;
  DatasetOptions dataset_options() const;
};

struct MetricSummary {
  double mean = 0.0;
  double std = 0.0;   ///< sample standard deviation (n - 1)
  double ci95 = 0.0;  ///< half-width, Student-t
  std::size_t count = 0;
};

MetricSummary summarize(const std::vector<double>& values);

struct SeedResult {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  FrontMetrics metrics;
  /// Mean of the inferred weights in simplex form (raw mean for pointwise inference).
  Vector mean_weight;
  std::vector<Vector> inferred_weights;
  std::vector<Vector> sampled_weights;
  ParetoFrontEstimate front;
  std::optional<ConeEstimate> cone;
  std::vector<double> cumulative_regret;
};

struct RunResult {
  std::string label;
  std::vector<SeedResult> seeds;
  std::map<std::string, MetricSummary> aggregate;
  std::size_t failed_seeds = 0;
  /// Cumulative regret averaged over successful seeds, indexed by t = 1..K.
  std::vector<std::pair<std::size_t, double>> regret_curve;
  double wall_time_seconds = 0.0;

  std::vector<double> metric_values(const std::string& metric) const;
};

/// Names of the five front metrics, in reporting order.
const std::vector<std::string>& metric_names();
double metric_value(const FrontMetrics& metrics, const std::string& name);

/// Estimate cone -> sample K directions -> scalarized solve -> non-dominated
/// insert, per seed. Honors config.ablation_flags.
RunResult run_algorithm1(const ExperimentConfig& config, const MoMdp& mdp);

/// Random scalarization, static Dirichlet weights, or a single logistic fit.
RunResult run_baseline(const ExperimentConfig& config, const MoMdp& mdp);

/// Dispatches on config.method.
RunResult run_method(const ExperimentConfig& config, const MoMdp& mdp);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
};

/// Two-sided Welch unequal-variance t-test.
WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct AblationResult {
  std::map<std::string, RunResult> arms;  ///< "full" plus one entry per flag
  /// p-values of each arm against "full", per metric.
  std::map<std::string, std::map<std::string, double>> p_values;
};

/// The full arm plus one arm per flag (defaults to all five).
AblationResult run_ablation(const ExperimentConfig& config, const MoMdp& mdp,
                            const std::vector<AblationFlag>& flags = all_ablation_flags());

struct SweepOptions {
  std::size_t num_items = 60;
  ItemSource item_source = ItemSource::PolicyReturn;
  std::size_t rollout_horizon = 100;
  FitOptions fit{};
  PlannerOptions planner{};
};

struct SweepRow {
  std::size_t num_pairs = 0;
  double mean_error = 0.0;  ///< mean angle (rad) between fitted and true direction
  double std_error = 0.0;
  std::size_t count = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Least-squares slope of log(mean error) against log(N).
  double slope = 0.0;
};

SweepResult run_sample_sweep(const MoMdp& mdp, std::span<const double> true_weight, double eta,
                             const std::vector<std::size_t>& n_grid, const std::vector<std::uint64_t>& seeds,
                             const SweepOptions& options = {});

struct RegretPoint {
  std::size_t t;
  double cumulative;
};

/// Regret(T) = sum_t [max_pi w*^T V^pi - w*^T V^{pi_t}] with w* normalized.
std::vector<RegretPoint> regret_curve(const MoMdp& mdp, std::span<const double> true_weight,
                                      const std::vector<Policy>& chosen_policies,
                                      const PlannerOptions& planner = {});

}  // namespace moirl
