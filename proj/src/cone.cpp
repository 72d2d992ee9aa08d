#include "moirl/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "moirl/geometry.hpp"

namespace moirl {
namespace {

constexpr double kDuplicateAngle = 1e-6;

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double signed_label(int label) { return label == 1 ? 1.0 : -1.0; }

void require_pairs(const PreferenceDataset& dataset) {
  if (dataset.pairs.empty()) throw InvalidArgument("preference dataset has no pairs");
}

// Clamp (optionally) and normalize onto the unit sphere.
Vector project(Vector w, bool orthant) {
  if (orthant)
    for (double& x : w) x = std::max(x, 0.0);
  const double n = norm(w);
  if (!(n > 0.0) || !std::isfinite(n)) throw DegenerateError("projected iterate is the zero vector");
  for (double& x : w) x /= n;
  return w;
}

}  // namespace

double logistic_loss(std::span<const double> w, const PreferenceDataset& dataset) {
  require_pairs(dataset);
  double total = 0.0;
  for (const auto& p : dataset.pairs)
    total += softplus(-dataset.eta * signed_label(p.label) * dot(w, p.delta));
  return total / static_cast<double>(dataset.pairs.size());
}

Vector logistic_loss_gradient(std::span<const double> w, const PreferenceDataset& dataset) {
  require_pairs(dataset);
  Vector g(w.size(), 0.0);
  for (const auto& p : dataset.pairs) {
    const double y = signed_label(p.label);
    const double coeff = -dataset.eta * y * logistic(-dataset.eta * y * dot(w, p.delta));
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += coeff * p.delta[k];
  }
  for (double& x : g) x /= static_cast<double>(dataset.pairs.size());
  return g;
}

double logistic_smoothness(const PreferenceDataset& dataset) {
  double max_sq = 0.0;
  for (const auto& p : dataset.pairs) max_sq = std::max(max_sq, dot(p.delta, p.delta));
  return dataset.eta * dataset.eta * max_sq / 4.0;
}

FitResult fit_direction(const PreferenceDataset& dataset, const FitOptions& options, std::uint64_t seed) {
  require_pairs(dataset);
  const std::size_t d = dataset.num_objectives();
  const double smoothness = logistic_smoothness(dataset);
  if (!(smoothness > 0.0)) throw DegenerateError("every difference vector is zero");
  const double step = options.step_size > 0.0 ? options.step_size : 1.0 / smoothness;

  Vector w;
  if (options.random_init) {
    Rng rng(seed);
    w = sample_dirichlet(rng, d);
    if (!options.project_to_orthant)
      for (double& x : w) x = uniform01(rng) < 0.5 ? -x : x;
    w = project(std::move(w), false);
  } else {
    w = Vector(d, 1.0 / std::sqrt(static_cast<double>(d)));
  }

  FitReport report;
  for (report.iterations = 0; report.iterations < options.max_iterations; ++report.iterations) {
    const Vector g = logistic_loss_gradient(w, dataset);
    Vector candidate(d);
    for (std::size_t k = 0; k < d; ++k) candidate[k] = w[k] - step * g[k];
    Vector next = project(std::move(candidate), options.project_to_orthant);
    report.gradient_norm = norm(subtract(w, next)) / step;
    if (report.gradient_norm <= options.gradient_tolerance) {
      report.converged = true;
      break;
    }
    w = std::move(next);
  }
  report.final_loss = logistic_loss(w, dataset);
  report.on_boundary =
      options.project_to_orthant && std::any_of(w.begin(), w.end(), [](double x) { return x == 0.0; });
  return {std::move(w), report};
}

std::vector<Vector> ConeEstimate::hull_directions() const {
  std::vector<Vector> out;
  for (std::size_t i : hull_rays) out.push_back(directions.at(i));
  return out;
}

Vector ConeEstimate::mean_direction() const {
  if (directions.empty()) throw InvalidArgument("empty cone");
  Vector mean(dimension(), 0.0);
  for (const auto& w : directions)
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += w[k];
  return normalized(mean);
}

ConeEstimate ConeEstimate::from_directions(const std::vector<Vector>& generators) {
  ConeEstimate cone;
  for (const auto& g : generators) {
    Vector u = normalized(g);
    const bool duplicate = std::any_of(cone.directions.begin(), cone.directions.end(),
                                       [&](const Vector& v) { return angular_distance(u, v) <= kDuplicateAngle; });
    if (!duplicate) cone.directions.push_back(std::move(u));
  }
  if (cone.directions.empty()) throw InvalidArgument("cone needs at least one generator");
  cone.hull_rays = extreme_rays(cone.directions);
  return cone;
}

ConeEstimate estimate_cone(const PreferenceDataset& dataset, const ConeOptions& options, std::uint64_t seed) {
  require_pairs(dataset);
  if (options.num_bootstrap == 0) throw InvalidArgument("num_bootstrap must be positive");
  if (!(options.subset_fraction > 0.0 && options.subset_fraction <= 1.0))
    throw InvalidArgument("subset_fraction must lie in (0, 1]");
  const std::size_t n = dataset.pairs.size();
  const auto m = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(options.subset_fraction * n)));

  std::vector<Vector> fitted;
  std::vector<FitReport> reports;
  std::size_t degenerate = 0;
  for (std::size_t b = 0; b < options.num_bootstrap; ++b) {
    Rng rng(derive_seed(seed, b));
    std::vector<std::size_t> picks(m);
    for (auto& i : picks) i = uniform_index(rng, n);
    try {
      FitResult fit = fit_direction(dataset.subset(picks), options.fit, derive_seed(seed, b, 1));
      fitted.push_back(std::move(fit.direction));
      reports.push_back(fit.report);
    } catch (const DegenerateError&) {
      ++degenerate;
    }
  }
  if (fitted.empty()) throw DegenerateError("every bootstrap fit was degenerate");
  ConeEstimate cone = ConeEstimate::from_directions(fitted);
  cone.fit_reports = std::move(reports);
  cone.degenerate_fits = degenerate;
  return cone;
}

namespace {

// Whether point `i` is (numerically) a convex combination of the others,
// via Frank-Wolfe on min ||sum_j l_j p_j - p_i|| over the simplex.
bool inside_hull_of_others(const std::vector<Vector>& pts, std::size_t i) {
  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (j != i) others.push_back(j);
  if (others.empty()) return false;
  const std::size_t dim = pts[i].size();
  std::vector<double> lambda(others.size(), 1.0 / static_cast<double>(others.size()));
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, norm(p));
  for (int it = 0; it < 5000; ++it) {
    Vector residual = scaled(pts[i], -1.0);
    for (std::size_t j = 0; j < others.size(); ++j)
      for (std::size_t k = 0; k < dim; ++k) residual[k] += lambda[j] * pts[others[j]][k];
    if (norm(residual) <= 1e-9 * std::max(scale, 1.0)) return true;
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < others.size(); ++j) {
      const double v = dot(residual, pts[others[j]]);
      if (v < best_value) best_value = v, best = j;
    }
    // Frank-Wolfe duality gap; a vanishing gap with a non-zero residual means outside.
    double current = 0.0;
    for (std::size_t j = 0; j < others.size(); ++j) current += lambda[j] * dot(residual, pts[others[j]]);
    if (current - best_value <= 1e-14 * std::max(scale * scale, 1.0)) return false;
    const double step = 2.0 / (it + 2.0);
    for (auto& l : lambda) l *= 1.0 - step;
    lambda[best] += step;
  }
  return false;
}

}  // namespace

std::vector<std::size_t> extreme_rays(const std::vector<Vector>& directions) {
  const std::size_t n = directions.size();
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (n <= 1) return all;
  const std::size_t d = directions.front().size();
  if (d == 1) return {0};

  if (d == 2) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const double a = std::atan2(directions[i][1], directions[i][0]);
      if (a < std::atan2(directions[lo][1], directions[lo][0])) lo = i;
      if (a > std::atan2(directions[hi][1], directions[hi][0])) hi = i;
    }
    // Wedges wider than pi are not pointed; keep every generator.
    const double width = std::atan2(directions[hi][1], directions[hi][0]) -
                         std::atan2(directions[lo][1], directions[lo][0]);
    if (width >= std::numbers::pi) return all;
    if (lo == hi) return {lo};
    return {std::min(lo, hi), std::max(lo, hi)};
  }

  // Central projection onto the hyperplane {x : x.c = 1} turns extreme rays
  // into extreme points of a (d-1)-dimensional point set.
  Vector c(d, 0.0);
  for (const auto& w : directions) {
    const Vector u = normalized(w);
    for (std::size_t k = 0; k < d; ++k) c[k] += u[k];
  }
  if (!(norm(c) > 0.0)) return all;
  c = normalized(c);
  std::vector<Vector> projected;
  for (const auto& w : directions) {
    const double along = dot(w, c);
    if (along <= 1e-12 * norm(w)) return all;
    projected.push_back(scaled(w, 1.0 / along));
  }

  if (d == 3) {
    // Orthonormal basis of the plane orthogonal to c.
    Vector e1 = std::abs(c[0]) < 0.9 ? Vector{1, 0, 0} : Vector{0, 1, 0};
    const double proj = dot(e1, c);
    for (std::size_t k = 0; k < 3; ++k) e1[k] -= proj * c[k];
    e1 = normalized(e1);
    const Vector e2 = {c[1] * e1[2] - c[2] * e1[1], c[2] * e1[0] - c[0] * e1[2], c[0] * e1[1] - c[1] * e1[0]};
    std::vector<Vector> planar;
    for (const auto& p : projected) planar.push_back({dot(p, e1), dot(p, e2)});
    auto hull = geometry::convex_hull_2d(planar);
    std::sort(hull.begin(), hull.end());
    return hull;
  }

  std::vector<std::size_t> rays;
  for (std::size_t i = 0; i < n; ++i)
    if (!inside_hull_of_others(projected, i)) rays.push_back(i);
  return rays.empty() ? all : rays;
}

Vector sample_direction(const ConeEstimate& cone, Rng& rng) {
  if (cone.directions.empty() || cone.hull_rays.empty()) throw InvalidArgument("cannot sample from an empty cone");
  if (cone.hull_rays.size() == 1) return cone.directions[cone.hull_rays.front()];
  const Vector lambda = sample_dirichlet(rng, cone.hull_rays.size());
  Vector w(cone.dimension(), 0.0);
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    const auto& ray = cone.directions[cone.hull_rays[j]];
    for (std::size_t k = 0; k < w.size(); ++k) w[k] += lambda[j] * ray[k];
  }
  return normalized(w);
}

Vector sample_direction(const ConeEstimate& cone, std::uint64_t seed) {
  Rng rng(seed);
  return sample_direction(cone, rng);
}

double angular_distance(std::span<const double> u, std::span<const double> v) {
  // 2 atan2(|u - v|, |u + v|) on normalized inputs; accurate near 0 and pi.
  const Vector a = normalized(u), b = normalized(v);
  Vector diff(a.size()), sum(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    diff[k] = a[k] - b[k];
    sum[k] = a[k] + b[k];
  }
  return 2.0 * std::atan2(norm(diff), norm(sum));
}

double cone_hausdorff_angle(const ConeEstimate& estimated, const ConeEstimate& reference, std::size_t samples,
                            std::uint64_t seed) {
  if (estimated.directions.empty() || reference.directions.empty())
    throw InvalidArgument("cone_hausdorff_angle needs non-empty cones");
  Rng rng(seed);
  std::vector<Vector> ref = reference.hull_directions();
  for (std::size_t i = 0; i < samples; ++i) ref.push_back(sample_direction(reference, rng));
  std::vector<Vector> est = estimated.hull_directions();
  for (std::size_t i = 0; i < samples; ++i) est.push_back(sample_direction(estimated, rng));

  double sup = 0.0;
  for (const auto& w : est) {
    double inf = std::numbers::pi;
    for (const auto& r : ref) inf = std::min(inf, angular_distance(w, r));
    sup = std::max(sup, inf);
  }
  return sup;
}

}  // namespace moirl
