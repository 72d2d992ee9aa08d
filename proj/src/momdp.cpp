#include "moirl/momdp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace moirl {
namespace {

constexpr double kRowSumTolerance = 1e-9;

void check_distribution(std::span<const double> p, const std::string& what) {
  double total = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0) throw InvalidArgument(what + " has a negative or non-finite entry");
    total += x;
  }
  if (std::abs(total - 1.0) > kRowSumTolerance)
    throw InvalidArgument(what + " sums to " + std::to_string(total) + ", expected 1");
}

}  // namespace

MoMdp::MoMdp(std::size_t num_states, std::size_t num_actions, std::size_t num_objectives,
             double discount, std::vector<double> transition, std::vector<double> reward,
             std::vector<double> start_distribution)
    : num_states_(num_states),
      num_actions_(num_actions),
      num_objectives_(num_objectives),
      discount_(discount),
      transition_(std::move(transition)),
      reward_(std::move(reward)),
      start_(std::move(start_distribution)) {
  if (num_states_ == 0 || num_actions_ == 0 || num_objectives_ == 0)
    throw InvalidArgument("MoMdp needs at least one state, action and objective");
  if (!(discount_ > 0.0 && discount_ < 1.0)) throw InvalidArgument("discount must lie in (0, 1)");
  if (transition_.size() != num_states_ * num_actions_ * num_states_)
    throw InvalidArgument("transition tensor has wrong size");
  if (reward_.size() != num_states_ * num_actions_ * num_objectives_)
    throw InvalidArgument("reward tensor has wrong size");
  if (start_.size() != num_states_) throw InvalidArgument("start distribution has wrong size");
  for (std::size_t s = 0; s < num_states_; ++s)
    for (std::size_t a = 0; a < num_actions_; ++a)
      check_distribution(next_state_distribution(s, a),
                         "transition row (" + std::to_string(s) + ", " + std::to_string(a) + ")");
  if (!all_finite(reward_)) throw InvalidArgument("reward tensor has non-finite entries");
  check_distribution(start_, "start distribution");
}

double MoMdp::max_abs_reward() const noexcept {
  double m = 0.0;
  for (double r : reward_) m = std::max(m, std::abs(r));
  return m;
}

bool MoMdp::is_deterministic() const noexcept {
  return std::all_of(transition_.begin(), transition_.end(),
                     [](double p) { return p == 0.0 || p == 1.0; });
}

std::size_t MoMdp::deterministic_successor(std::size_t s, std::size_t a) const {
  auto row = next_state_distribution(s, a);
  for (std::size_t t = 0; t < row.size(); ++t)
    if (row[t] == 1.0) return t;
  throw InvalidArgument("transition row is not a point mass");
}

MoMdp MoMdp::scalarized(std::span<const double> weight) const {
  if (weight.size() != num_objectives_) throw InvalidArgument("weight length must equal num_objectives");
  std::vector<double> r(num_states_ * num_actions_);
  for (std::size_t s = 0; s < num_states_; ++s)
    for (std::size_t a = 0; a < num_actions_; ++a) r[s * num_actions_ + a] = dot(weight, reward(s, a));
  return MoMdp(num_states_, num_actions_, 1, discount_, transition_, std::move(r), start_);
}

Policy::Policy(std::size_t num_states, std::size_t num_actions, std::vector<double> probabilities)
    : num_states_(num_states), num_actions_(num_actions), probabilities_(std::move(probabilities)) {
  if (num_states_ == 0 || num_actions_ == 0) throw InvalidArgument("empty policy");
  if (probabilities_.size() != num_states_ * num_actions_) throw InvalidArgument("policy table has wrong size");
  for (std::size_t s = 0; s < num_states_; ++s)
    check_distribution(action_distribution(s), "policy row " + std::to_string(s));
}

Policy Policy::deterministic(std::span<const std::size_t> actions, std::size_t num_actions) {
  std::vector<double> p(actions.size() * num_actions, 0.0);
  for (std::size_t s = 0; s < actions.size(); ++s) {
    if (actions[s] >= num_actions) throw InvalidArgument("action index out of range");
    p[s * num_actions + actions[s]] = 1.0;
  }
  return Policy(actions.size(), num_actions, std::move(p));
}

Policy Policy::uniform(std::size_t num_states, std::size_t num_actions) {
  return Policy(num_states, num_actions,
                std::vector<double>(num_states * num_actions, 1.0 / static_cast<double>(num_actions)));
}

bool Policy::is_deterministic() const noexcept {
  return std::all_of(probabilities_.begin(), probabilities_.end(),
                     [](double p) { return p == 0.0 || p == 1.0; });
}

std::size_t Policy::action(std::size_t s) const {
  auto row = action_distribution(s);
  return static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
}

std::vector<std::size_t> Policy::actions() const {
  std::vector<std::size_t> out(num_states_);
  for (std::size_t s = 0; s < num_states_; ++s) out[s] = action(s);
  return out;
}

std::size_t default_iteration_cap(double tolerance, double discount) {
  const double sweeps = std::ceil(std::log(tolerance * (1.0 - discount)) / std::log(discount));
  return static_cast<std::size_t>(std::max(0.0, sweeps)) + 1000;
}

std::vector<double> evaluate_policy_per_state(const MoMdp& mdp, const Policy& policy,
                                              const EvaluationOptions& options) {
  if (!(options.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  const std::size_t S = mdp.num_states(), A = mdp.num_actions(), d = mdp.num_objectives();
  if (policy.num_states() != S || policy.num_actions() != A)
    throw InvalidArgument("policy shape does not match the MDP");
  const double gamma = mdp.discount();
  const double threshold = options.tolerance * (1.0 - gamma) / gamma;
  const std::size_t cap =
      options.max_iterations ? options.max_iterations : default_iteration_cap(options.tolerance, gamma);

  // Expected one-step reward and transition under the policy.
  std::vector<double> r_pi(S * d, 0.0), p_pi(S * S, 0.0);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t a = 0; a < A; ++a) {
      const double pa = policy.probability(s, a);
      if (pa == 0.0) continue;
      auto r = mdp.reward(s, a);
      for (std::size_t k = 0; k < d; ++k) r_pi[s * d + k] += pa * r[k];
      auto next = mdp.next_state_distribution(s, a);
      for (std::size_t t = 0; t < S; ++t) p_pi[s * S + t] += pa * next[t];
    }
  }

  std::vector<double> v(S * d, 0.0), next_v(S * d);
  double residual = 0.0;
  for (std::size_t it = 0; it < cap; ++it) {
    residual = 0.0;
    for (std::size_t s = 0; s < S; ++s) {
      for (std::size_t k = 0; k < d; ++k) {
        double acc = 0.0;
        for (std::size_t t = 0; t < S; ++t) acc += p_pi[s * S + t] * v[t * d + k];
        const double value = r_pi[s * d + k] + gamma * acc;
        residual = std::max(residual, std::abs(value - v[s * d + k]));
        next_v[s * d + k] = value;
      }
    }
    v.swap(next_v);
    if (residual <= threshold) return v;
  }
  throw ConvergenceError("policy evaluation did not converge", residual, cap);
}

VectorReturn evaluate_policy(const MoMdp& mdp, const Policy& policy, const EvaluationOptions& options) {
  const auto per_state = evaluate_policy_per_state(mdp, policy, options);
  const std::size_t d = mdp.num_objectives();
  auto start = mdp.start_distribution();
  VectorReturn out{Vector(d, 0.0)};
  for (std::size_t s = 0; s < mdp.num_states(); ++s)
    for (std::size_t k = 0; k < d; ++k) out.values[k] += start[s] * per_state[s * d + k];
  return out;
}

VectorReturn trajectory_return(const MoMdp& mdp, const Trajectory& trajectory) {
  if (trajectory.steps.empty()) throw InvalidArgument("empty trajectory");
  const std::size_t d = mdp.num_objectives();
  VectorReturn out{Vector(d, 0.0)};
  double weight = 1.0;
  for (const Step& step : trajectory.steps) {
    if (step.state >= mdp.num_states() || step.action >= mdp.num_actions())
      throw InvalidArgument("trajectory step out of range");
    auto r = mdp.reward(step.state, step.action);
    for (std::size_t k = 0; k < d; ++k) out.values[k] += weight * r[k];
    weight *= mdp.discount();
  }
  return out;
}

Trajectory rollout(const MoMdp& mdp, const Policy& policy, std::size_t horizon, Rng& rng) {
  if (horizon == 0) throw InvalidArgument("rollout horizon must be positive");
  if (policy.num_states() != mdp.num_states() || policy.num_actions() != mdp.num_actions())
    throw InvalidArgument("policy shape does not match the MDP");
  Trajectory traj;
  traj.steps.reserve(horizon);
  std::size_t s = sample_categorical(rng, mdp.start_distribution());
  for (std::size_t t = 0; t < horizon; ++t) {
    const std::size_t a = sample_categorical(rng, policy.action_distribution(s));
    traj.steps.push_back({s, a});
    s = sample_categorical(rng, mdp.next_state_distribution(s, a));
  }
  return traj;
}

Trajectory rollout(const MoMdp& mdp, const Policy& policy, std::size_t horizon, std::uint64_t seed) {
  Rng rng(seed);
  return rollout(mdp, policy, horizon, rng);
}

}  // namespace moirl
