#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "moirl/linalg.hpp"
#include "moirl/oracle.hpp"
#include "moirl/rng.hpp"

namespace moirl {

/// Mean logistic loss (1/n) sum log(1 + exp(-eta y w^T delta)) with y = 2 label - 1.
double logistic_loss(std::span<const double> w, const PreferenceDataset& dataset);

/// Analytic gradient of logistic_loss with respect to w.
Vector logistic_loss_gradient(std::span<const double> w, const PreferenceDataset& dataset);

/// Smoothness constant eta^2 max ||delta||^2 / 4 of the loss.
double logistic_smoothness(const PreferenceDataset& dataset);

struct FitOptions {
  /// 0 selects 1 / L with L = logistic_smoothness(dataset).
  double step_size = 0.0;
  std::size_t max_iterations = 10000;
  double gradient_tolerance = 1e-7;
  /// Clamp iterates to the non-negative orthant before normalizing.
  bool project_to_orthant = true;
  /// Start from a seeded random direction instead of the normalized diagonal.
  bool random_init = false;
};

struct FitReport {
  double final_loss = 0.0;
  /// Norm of the projected-gradient mapping (w - P(w - a g)) / a at the last iterate.
  double gradient_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Some coordinate of the returned direction was clamped to zero.
  bool on_boundary = false;
};

struct FitResult {
  Vector direction;
  FitReport report;
};

/// Projected gradient descent on the unit sphere (intersected with the orthant
/// unless disabled). Throws DegenerateError when the projection collapses to zero
/// or the dataset carries no non-zero difference vector.
FitResult fit_direction(const PreferenceDataset& dataset, const FitOptions& options = {},
                        std::uint64_t seed = 0);

/// Finite set of unit directions whose conic hull approximates the preference cone.
struct ConeEstimate {
  std::vector<Vector> directions;
  /// Indices into `directions` of the extreme rays of their conic hull.
  std::vector<std::size_t> hull_rays;
  std::vector<FitReport> fit_reports;
  std::size_t degenerate_fits = 0;

  std::size_t dimension() const { return directions.empty() ? 0 : directions.front().size(); }
  std::vector<Vector> hull_directions() const;
  /// Normalized mean of the directions.
  Vector mean_direction() const;
  /// Builds a cone from given unit-normalizable generators (deduplicated, hull computed).
  static ConeEstimate from_directions(const std::vector<Vector>& generators);
};

struct ConeOptions {
  std::size_t num_bootstrap = 12;
  double subset_fraction = 0.7;
  FitOptions fit{};
};

/// Bootstrap aggregation: fit_direction on `num_bootstrap` resamples (with
/// replacement, round(fraction n) pairs each), deduplicated within 1e-6 rad.
ConeEstimate estimate_cone(const PreferenceDataset& dataset, const ConeOptions& options,
                           std::uint64_t seed);

/// Extreme rays of cone(directions). Exact for d <= 3; for d >= 4 a numerical
/// convex-combination test is used. Falls back to all indices if some generator
/// is not strictly inside a common half-space.
std::vector<std::size_t> extreme_rays(const std::vector<Vector>& directions);

/// Dirichlet(1, ..., 1) combination of the hull rays, L2-normalized.
Vector sample_direction(const ConeEstimate& cone, Rng& rng);
Vector sample_direction(const ConeEstimate& cone, std::uint64_t seed);

/// Angle in [0, pi] between two directions (normalized internally).
double angular_distance(std::span<const double> u, std::span<const double> v);

/// One-sided Monte-Carlo angular Hausdorff distance: sup over directions drawn
/// from `estimated` (plus its hull rays) of the inf angle to `reference`'s hull
/// rays and sampled directions.
double cone_hausdorff_angle(const ConeEstimate& estimated, const ConeEstimate& reference,
                            std::size_t samples = 1024, std::uint64_t seed = 0);

}  // namespace moirl
