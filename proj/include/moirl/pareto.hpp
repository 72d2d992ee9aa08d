#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "moirl/momdp.hpp"

namespace moirl {

/// Component-wise equality test used for the "a != b" part of dominance.
constexpr double kReturnEqualityTolerance = 1e-12;

bool returns_equal(std::span<const double> a, std::span<const double> b);

/// a >= b component-wise (exact) and a != b.
bool dominates(std::span<const double> a, std::span<const double> b);

struct FrontPoint {
  VectorReturn value;
  Vector weight;                ///< scalarization that produced the point
  std::optional<Policy> policy; ///< producing policy, when known
  std::size_t accepted_at;      ///< index of the insertion that added it
};

enum class InsertDecision { Accepted, Dominated, Duplicate };

struct InsertionRecord {
  std::size_t candidate_index;
  InsertDecision decision;
  std::size_t removed;  ///< members evicted by an accepted candidate
};

/// Incrementally maintained non-dominated set with an insertion log.
class ParetoFrontEstimate {
 public:
  /// Returns true if the candidate was added.
  bool insert(VectorReturn value, Vector weight = {}, std::optional<Policy> policy = std::nullopt);

  const std::vector<FrontPoint>& points() const noexcept { return points_; }
  const std::vector<InsertionRecord>& insertion_log() const noexcept { return log_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::vector<Vector> values() const;

 private:
  std::vector<FrontPoint> points_;
  std::vector<InsertionRecord> log_;
};

struct FrontMetrics {
  double pref_l1_error = 0.0;
  double cosine_similarity = 0.0;
  double diversity_l2_spread = 0.0;
  double smoothness_convex_volume = 0.0;
  std::size_t num_pareto_points = 0;
};

struct MetricOptions {
  /// Use the raw mean of the inferred vectors for the L1 error instead of the
  /// mean of their simplex-normalized forms.
  bool raw_l1 = false;
};

/// Mean of the inferred weights after simplex normalization (or raw).
Vector mean_inferred_weight(std::span<const Vector> inferred_weights, bool raw = false);

/// Mean pairwise Euclidean distance (0 for fewer than two points).
double mean_pairwise_distance(const std::vector<Vector>& points);

FrontMetrics compute_metrics(const ParetoFrontEstimate& front, std::span<const Vector> inferred_weights,
                             std::span<const double> true_weight, const MetricOptions& options = {});

}  // namespace moirl
