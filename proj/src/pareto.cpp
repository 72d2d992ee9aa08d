#include "moirl/pareto.hpp"

#include <cmath>

#include "moirl/geometry.hpp"

namespace moirl {

bool returns_equal(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > kReturnEqualityTolerance) return false;
  return true;
}

bool dominates(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] < b[k]) return false;
  return !returns_equal(a, b);
}

bool ParetoFrontEstimate::insert(VectorReturn value, Vector weight, std::optional<Policy> policy) {
  const std::size_t index = log_.size();
  if (!points_.empty() && points_.front().value.size() != value.size())
    throw InvalidArgument("candidate dimension differs from the front");
  for (const auto& p : points_) {
    if (returns_equal(p.value.values, value.values)) {
      log_.push_back({index, InsertDecision::Duplicate, 0});
      return false;
    }
    if (dominates(p.value.values, value.values)) {
      log_.push_back({index, InsertDecision::Dominated, 0});
      return false;
    }
  }
  const auto before = points_.size();
  std::erase_if(points_, [&](const FrontPoint& p) { return dominates(value.values, p.value.values); });
  const std::size_t removed = before - points_.size();
  points_.push_back({std::move(value), std::move(weight), std::move(policy), index});
  log_.push_back({index, InsertDecision::Accepted, removed});
  return true;
}

std::vector<Vector> ParetoFrontEstimate::values() const {
  std::vector<Vector> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.value.values);
  return out;
}

Vector mean_inferred_weight(std::span<const Vector> inferred_weights, bool raw) {
  if (inferred_weights.empty()) throw InvalidArgument("at least one inferred weight is required");
  Vector mean(inferred_weights.front().size(), 0.0);
  for (const auto& w : inferred_weights) {
    const Vector v = raw ? w : simplex_normalized(w);
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += v[k];
  }
  for (double& x : mean) x /= static_cast<double>(inferred_weights.size());
  return mean;
}

double mean_pairwise_distance(const std::vector<Vector>& points) {
  if (points.size() < 2) return 0.0;
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j, ++count) total += norm(subtract(points[i], points[j]));
  return total / static_cast<double>(count);
}

FrontMetrics compute_metrics(const ParetoFrontEstimate& front, std::span<const Vector> inferred_weights,
                             std::span<const double> true_weight, const MetricOptions& options) {
  if (inferred_weights.empty()) throw InvalidArgument("at least one inferred weight is required");
  if (std::abs(norm(true_weight) - 1.0) > 1e-6) throw InvalidArgument("true weight must have unit norm");
  FrontMetrics m;
  const Vector target = simplex_normalized(true_weight);
  const Vector mean = mean_inferred_weight(inferred_weights, options.raw_l1);
  for (std::size_t k = 0; k < mean.size(); ++k) m.pref_l1_error += std::abs(mean[k] - target[k]);

  Vector direction(true_weight.size(), 0.0);
  for (const auto& w : inferred_weights) {
    const Vector u = normalized(w);
    for (std::size_t k = 0; k < direction.size(); ++k) direction[k] += u[k];
  }
  m.cosine_similarity = norm(direction) > 0.0 ? cosine_similarity(direction, true_weight) : 0.0;

  const auto values = front.values();
  m.diversity_l2_spread = mean_pairwise_distance(values);
  m.smoothness_convex_volume = geometry::convex_hull_measure(values);
  m.num_pareto_points = values.size();
  return m;
}

}  // namespace moirl
