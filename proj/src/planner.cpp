#include "moirl/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace moirl {
namespace {

constexpr double kTieTolerance = 1e-9;

double q_value(const MoMdp& mdp, std::span<const double> scalar_reward, std::span<const double> values,
               std::size_t s, std::size_t a) {
  auto next = mdp.next_state_distribution(s, a);
  double acc = 0.0;
  for (std::size_t t = 0; t < next.size(); ++t) acc += next[t] * values[t];
  return scalar_reward[s * mdp.num_actions() + a] + mdp.discount() * acc;
}

}  // namespace

ValueIterationResult value_iteration(const MoMdp& mdp, std::span<const double> scalar_reward,
                                     const PlannerOptions& options) {
  if (!(options.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  const std::size_t S = mdp.num_states(), A = mdp.num_actions();
  if (scalar_reward.size() != S * A) throw InvalidArgument("scalar reward table has wrong size");
  const double gamma = mdp.discount();
  const double threshold = options.tolerance * (1.0 - gamma) / gamma;
  const std::size_t cap =
      options.max_iterations ? options.max_iterations : default_iteration_cap(options.tolerance, gamma);

  ValueIterationResult result;
  std::vector<double> v(S, 0.0), next_v(S);
  for (std::size_t it = 0; it < cap; ++it) {
    double residual = 0.0;
    for (std::size_t s = 0; s < S; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < A; ++a) best = std::max(best, q_value(mdp, scalar_reward, v, s, a));
      residual = std::max(residual, std::abs(best - v[s]));
      next_v[s] = best;
    }
    v.swap(next_v);
    result.residuals.push_back(residual);
    if (residual <= threshold) {
      result.values = std::move(v);
      return result;
    }
  }
  throw ConvergenceError("value iteration did not converge", result.residuals.back(), cap);
}

Policy greedy_policy(const MoMdp& mdp, std::span<const double> scalar_reward,
                     std::span<const double> values) {
  const std::size_t S = mdp.num_states(), A = mdp.num_actions();
  std::vector<std::size_t> actions(S, 0);
  std::vector<double> q(A);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t a = 0; a < A; ++a) q[a] = q_value(mdp, scalar_reward, values, s, a);
    const double best = *std::max_element(q.begin(), q.end());
    for (std::size_t a = 0; a < A; ++a) {
      if (q[a] >= best - kTieTolerance) {
        actions[s] = a;
        break;
      }
    }
  }
  return Policy::deterministic(actions, A);
}

ScalarizedSolution solve_scalarized(const MoMdp& mdp, std::span<const double> weight,
                                    const PlannerOptions& options) {
  if (weight.size() != mdp.num_objectives()) throw InvalidArgument("weight length must equal num_objectives");
  if (!all_finite(weight)) throw InvalidArgument("weight must be finite");
  Vector w = normalized(weight);

  const std::size_t S = mdp.num_states(), A = mdp.num_actions();
  std::vector<double> scalar_reward(S * A);
  for (std::size_t s = 0; s < S; ++s)
    for (std::size_t a = 0; a < A; ++a) scalar_reward[s * A + a] = dot(w, mdp.reward(s, a));

  auto vi = value_iteration(mdp, scalar_reward, options);
  Policy policy = greedy_policy(mdp, scalar_reward, vi.values);
  VectorReturn ret = evaluate_policy(mdp, policy, {options.tolerance, options.max_iterations});
  const double value = dot(w, ret.values);
  return ScalarizedSolution{std::move(w), std::move(policy), value, std::move(ret), vi.residuals.size()};
}

}  // namespace moirl
