#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "moirl/momdp.hpp"

namespace moirl {

struct PlannerOptions {
  double tolerance = 1e-8;
  /// 0 selects the contraction-rate cap (see default_iteration_cap).
  std::size_t max_iterations = 0;
};

/// Optimal deterministic policy for one scalarization direction.
struct ScalarizedSolution {
  Vector weight;  ///< L2-normalized direction actually planned for
  Policy policy;
  double scalar_value;  ///< weight · vector_return
  VectorReturn vector_return;
  std::size_t sweeps;
};

struct ValueIterationResult {
  std::vector<double> values;     ///< optimal scalar value per state
  std::vector<double> residuals;  ///< sup-norm change of each sweep
};

/// Value iteration on a scalar reward table laid out as [s * A + a].
/// Stops once the sweep residual is <= tolerance (1 - gamma) / gamma.
ValueIterationResult value_iteration(const MoMdp& mdp, std::span<const double> scalar_reward,
                                     const PlannerOptions& options = {});

/// Greedy deterministic policy w.r.t. the given values. Q-values within 1e-9
/// of the best resolve to the lowest action index.
Policy greedy_policy(const MoMdp& mdp, std::span<const double> scalar_reward,
                     std::span<const double> values);

/// argmax_pi w^T V^pi, with w normalized internally. The vector return is the
/// exact evaluation of the extracted policy on the original vector reward.
ScalarizedSolution solve_scalarized(const MoMdp& mdp, std::span<const double> weight,
                                    const PlannerOptions& options = {});

}  // namespace moirl
