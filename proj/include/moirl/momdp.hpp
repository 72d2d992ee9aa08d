#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "moirl/linalg.hpp"
#include "moirl/rng.hpp"

namespace moirl {

/// Point in objective space: one discounted return per objective.
struct VectorReturn {
  Vector values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  operator std::span<const double>() const noexcept { return values; }
  bool operator==(const VectorReturn&) const = default;
};

/// Finite multi-objective MDP with dense transition and reward tensors.
///
/// Tensors are row-major: transition[(s * A + a) * S + s'] and
/// reward[(s * A + a) * d + k]. The object is immutable after construction and
/// the constructor enforces every invariant (stochastic rows, finite rewards,
/// discount in (0, 1), valid start distribution).
class MoMdp {
 public:
  MoMdp(std::size_t num_states, std::size_t num_actions, std::size_t num_objectives,
        double discount, std::vector<double> transition, std::vector<double> reward,
        std::vector<double> start_distribution);

  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_actions() const noexcept { return num_actions_; }
  std::size_t num_objectives() const noexcept { return num_objectives_; }
  double discount() const noexcept { return discount_; }

  std::span<const double> next_state_distribution(std::size_t s, std::size_t a) const {
    return {transition_.data() + (s * num_actions_ + a) * num_states_, num_states_};
  }
  std::span<const double> reward(std::size_t s, std::size_t a) const {
    return {reward_.data() + (s * num_actions_ + a) * num_objectives_, num_objectives_};
  }
  std::span<const double> start_distribution() const noexcept { return start_; }
  const std::vector<double>& transition_tensor() const noexcept { return transition_; }
  const std::vector<double>& reward_tensor() const noexcept { return reward_; }

  /// Largest absolute reward entry.
  double max_abs_reward() const noexcept;
  /// True when every transition row is a point mass.
  bool is_deterministic() const noexcept;
  /// Successor of (s, a) in a deterministic MDP.
  std::size_t deterministic_successor(std::size_t s, std::size_t a) const;

  /// MDP with the scalar reward w·R(s, a) as its single objective.
  MoMdp scalarized(std::span<const double> weight) const;

  bool operator==(const MoMdp&) const = default;

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::size_t num_objectives_;
  double discount_;
  std::vector<double> transition_;
  std::vector<double> reward_;
  std::vector<double> start_;
};

/// Stationary (possibly stochastic) policy: one action distribution per state.
class Policy {
 public:
  Policy(std::size_t num_states, std::size_t num_actions, std::vector<double> probabilities);

  static Policy deterministic(std::span<const std::size_t> actions, std::size_t num_actions);
  static Policy uniform(std::size_t num_states, std::size_t num_actions);

  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_actions() const noexcept { return num_actions_; }
  std::span<const double> action_distribution(std::size_t s) const {
    return {probabilities_.data() + s * num_actions_, num_actions_};
  }
  double probability(std::size_t s, std::size_t a) const {
    return probabilities_[s * num_actions_ + a];
  }
  bool is_deterministic() const noexcept;
  /// Action with the largest probability (lowest index on ties).
  std::size_t action(std::size_t s) const;
  /// Per-state actions; only meaningful for deterministic policies.
  std::vector<std::size_t> actions() const;

  bool operator==(const Policy&) const = default;

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::vector<double> probabilities_;
};

struct Step {
  std::size_t state;
  std::size_t action;
  bool operator==(const Step&) const = default;
};

struct Trajectory {
  std::vector<Step> steps;
  std::size_t horizon() const noexcept { return steps.size(); }
  bool operator==(const Trajectory&) const = default;
};

struct EvaluationOptions {
  double tolerance = 1e-8;
  /// 0 selects ceil(log(tol (1 - gamma)) / log gamma) + 1000.
  std::size_t max_iterations = 0;
};

/// Sweep cap implied by the contraction rate for a given tolerance.
std::size_t default_iteration_cap(double tolerance, double discount);

/// Per-state vector values, row-major [s * d + k].
std::vector<double> evaluate_policy_per_state(const MoMdp& mdp, const Policy& policy,
                                              const EvaluationOptions& options = {});

/// Expected discounted vector return under the start distribution.
VectorReturn evaluate_policy(const MoMdp& mdp, const Policy& policy,
                             const EvaluationOptions& options = {});

/// Finite discounted sum sum_t gamma^t R(s_t, a_t) over the trajectory.
VectorReturn trajectory_return(const MoMdp& mdp, const Trajectory& trajectory);

/// Samples a `horizon`-step trajectory; deterministic for a fixed seed.
Trajectory rollout(const MoMdp& mdp, const Policy& policy, std::size_t horizon,
                   std::uint64_t seed);
Trajectory rollout(const MoMdp& mdp, const Policy& policy, std::size_t horizon, Rng& rng);

}  // namespace moirl
