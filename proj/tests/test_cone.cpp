#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "moirl/cone.hpp"
#include "moirl/envs.hpp"
#include "moirl/errors.hpp"

using namespace moirl;

namespace {

PreferenceDataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t d, double eta) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vector> deltas(n, Vector(d));
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& x : deltas[i]) x = g(rng);
    labels[i] = static_cast<int>(rng() % 2);
  }
  return PreferenceDataset::from_differences(deltas, labels, eta);
}

PreferenceDataset noiseless(const Vector& w, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vector> deltas;
  std::vector<int> labels;
  while (deltas.size() < n) {
    Vector delta(w.size());
    for (auto& x : delta) x = g(rng);
    const double s = dot(w, delta);
    if (s == 0.0) continue;
    deltas.push_back(delta);
    labels.push_back(s > 0 ? 1 : 0);
  }
  return PreferenceDataset::from_differences(deltas, labels, 50.0);
}

double resum_loss(const Vector& w, const PreferenceDataset& data) {
  double total = 0.0;
  for (const auto& p : data.pairs) {
    const double y = p.label == 1 ? 1.0 : -1.0;
    total += std::log1p(std::exp(-data.eta * y * dot(w, p.delta)));
  }
  return total / static_cast<double>(data.pairs.size());
}

}  // namespace

TEST_CASE("loss at w = 0 is log 2") {
  std::mt19937_64 rng(1);
  const auto data = random_dataset(rng, 17, 3, 2.5);
  CHECK(logistic_loss(Vector{0, 0, 0}, data) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("saturated pair has vanishing loss") {
  const auto data = PreferenceDataset::from_differences({{1.0, 0.0}}, {1}, 1.0);
  CHECK(logistic_loss(Vector{1e4, 0}, data) < 1e-12);
}

TEST_CASE("loss equals an independent re-summation") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const auto data = random_dataset(rng, 5, 3, 1.7);
    const Vector w{g(rng), g(rng), g(rng)};
    CHECK(logistic_loss(w, data) == doctest::Approx(resum_loss(w, data)).epsilon(1e-12));
  }
}

TEST_CASE("gradient matches central finite differences on 100 random draws") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  const double h = 1e-5;
  for (int draw = 0; draw < 100; ++draw) {
    const std::size_t d = 2 + draw % 3;
    const auto data = random_dataset(rng, 3 + draw % 20, d, 0.5 + (draw % 5));
    Vector w(d);
    for (auto& x : w) x = 0.5 * g(rng);
    const auto grad = logistic_loss_gradient(w, data);
    for (std::size_t k = 0; k < d; ++k) {
      Vector up = w, down = w;
      up[k] += h;
      down[k] -= h;
      const double fd = (logistic_loss(up, data) - logistic_loss(down, data)) / (2 * h);
      const double scale = std::max({std::abs(fd), std::abs(grad[k]), 1e-3});
      CHECK(std::abs(fd - grad[k]) / scale <= 1e-6);
    }
  }
}

TEST_CASE("balanced dataset has zero gradient at the origin") {
  const auto data = PreferenceDataset::from_differences({{1.0, 2.0}, {1.0, 2.0}}, {1, 0}, 3.0);
  const auto grad = logistic_loss_gradient(Vector{0, 0}, data);
  CHECK(grad[0] == 0.0);
  CHECK(grad[1] == 0.0);
}

TEST_CASE("gradient of a single pair scales with delta as the closed form says") {
  const double eta = 1.3;
  const Vector w{0.2, -0.4}, delta{0.5, 1.5};
  const auto one = PreferenceDataset::from_differences({delta}, {1}, eta);
  const auto two = PreferenceDataset::from_differences({scaled(delta, 2.0)}, {1}, eta);
  auto closed = [&](const Vector& dl) {
    const double s = 1.0 / (1.0 + std::exp(eta * dot(w, dl)));
    return scaled(dl, -eta * s);
  };
  const auto g1 = logistic_loss_gradient(w, one), g2 = logistic_loss_gradient(w, two);
  const auto c1 = closed(delta), c2 = closed(scaled(delta, 2.0));
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(g1[k] == doctest::Approx(c1[k]).epsilon(1e-12));
    CHECK(g2[k] == doctest::Approx(c2[k]).epsilon(1e-12));
  }
}

TEST_CASE("loss is convex along random segments") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const auto data = random_dataset(rng, 10, 3, 1.0);
    const Vector a{g(rng), g(rng), g(rng)}, b{g(rng), g(rng), g(rng)};
    Vector mid(3);
    for (std::size_t k = 0; k < 3; ++k) mid[k] = 0.5 * (a[k] + b[k]);
    CHECK(logistic_loss(mid, data) <= 0.5 * (logistic_loss(a, data) + logistic_loss(b, data)) + 1e-9);
  }
}

TEST_CASE("projected gradient steps do not increase the loss") {
  const auto mdp = build_thermostat2d();
  const auto data = generate_dataset(mdp, {}, normalized(Vector{0.3, 0.7}), 5);
  const double L = logistic_smoothness(data);
  double prev = 1e300;
  for (std::size_t it : {1u, 2u, 5u, 10u, 50u, 200u, 1000u}) {
    FitOptions opts;
    opts.step_size = 1.0 / L;
    opts.max_iterations = it;
    opts.gradient_tolerance = 0.0;
    const auto fit = fit_direction(data, opts);
    CHECK(fit.report.final_loss <= prev + 1e-12);
    prev = fit.report.final_loss;
  }
}

TEST_CASE("noiseless data recovers the direction") {
  const Vector w = normalized(Vector{0.6, 0.8});
  const auto fit = fit_direction(noiseless(w, 400, 1));
  CHECK(cosine_similarity(fit.direction, w) >= 0.999);

  const Vector w3 = normalized(Vector{0.2, 0.5, 0.3});
  CHECK(cosine_similarity(fit_direction(noiseless(w3, 600, 2)).direction, w3) >= 0.999);

  const auto cone = estimate_cone(noiseless(w, 3000, 3), {}, 7);
  for (const auto& dir : cone.directions) CHECK(angular_distance(dir, w) <= 0.01);
}

TEST_CASE("flipped labels push the fit to the boundary") {
  const Vector w = normalized(Vector{0.6, 0.8});
  auto data = noiseless(w, 300, 4);
  for (auto& p : data.pairs) p.label = 1 - p.label;

  FitOptions free;
  free.project_to_orthant = false;
  CHECK(dot(fit_direction(data, free).direction, w) <= 0.0);

  bool flagged = false;
  try {
    const auto fit = fit_direction(data);
    flagged = fit.report.on_boundary || !fit.report.converged;
  } catch (const DegenerateError&) {
    flagged = true;
  }
  CHECK(flagged);
}

TEST_CASE("fit rejects data without signal") {
  const auto zero = PreferenceDataset::from_differences({{0.0, 0.0}}, {1}, 1.0);
  CHECK_THROWS_AS(fit_direction(zero), DegenerateError);
}

TEST_CASE("single bootstrap gives a single ray") {
  const auto mdp = build_thermostat2d();
  const auto data = generate_dataset(mdp, {}, normalized(Vector{0.3, 0.7}), 1);
  ConeOptions opts;
  opts.num_bootstrap = 1;
  const auto cone = estimate_cone(data, opts, 9);
  REQUIRE(cone.directions.size() == 1);
  for (std::uint64_t s = 0; s < 5; ++s) CHECK(sample_direction(cone, s) == cone.directions[0]);
}

TEST_CASE("wedge sampling covers the wedge") {
  const auto cone = ConeEstimate::from_directions({{1.0, 0.0}, {0.0, 1.0}});
  Rng rng(2);
  double lo = 10, hi = -10;
  for (int i = 0; i < 10000; ++i) {
    const auto w = sample_direction(cone, rng);
    const double a = std::atan2(w[1], w[0]);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  CHECK(lo <= 0.05);
  CHECK(lo >= 0.0);
  CHECK(hi >= std::numbers::pi / 2 - 0.05);
  CHECK(hi <= std::numbers::pi / 2);
  CHECK(sample_direction(cone, 5) == sample_direction(cone, 5));
}

TEST_CASE("extreme rays in 3D") {
  const std::vector<Vector> dirs{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, normalized(Vector{1, 1, 1}), normalized(Vector{1, 1, 0})};
  auto rays = extreme_rays(dirs);
  std::sort(rays.begin(), rays.end());
  CHECK(rays == std::vector<std::size_t>{0, 1, 2});

  const std::vector<Vector> planar{normalized(Vector{1, 1, 0}), normalized(Vector{2, 1, 0}), normalized(Vector{1, 2, 0})};
  rays = extreme_rays(planar);
  std::sort(rays.begin(), rays.end());
  CHECK(rays == std::vector<std::size_t>{1, 2});
}

TEST_CASE("angular distances") {
  const Vector w{0.3, 0.4};
  CHECK(angular_distance(w, w) == 0.0);
  CHECK(angular_distance(Vector{1, 0}, Vector{0, 1}) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(angular_distance(Vector{0.6, 0.8}, Vector{1, 0}) == doctest::Approx(0.927295218001612).epsilon(1e-12));
}

TEST_CASE("cone Hausdorff angle") {
  const auto a = ConeEstimate::from_directions({{1.0, 0.0}});
  const auto b = ConeEstimate::from_directions({{0.0, 1.0}});
  CHECK(cone_hausdorff_angle(a, a) == 0.0);
  CHECK(cone_hausdorff_angle(a, b) == doctest::Approx(std::numbers::pi / 2));
  const auto wedge = ConeEstimate::from_directions({{1.0, 0.0}, {0.0, 1.0}});
  const auto mid = ConeEstimate::from_directions({{1.0, 1.0}});
  CHECK(std::abs(cone_hausdorff_angle(wedge, mid, 4096, 3) - std::numbers::pi / 4) <= 0.02);
}

TEST_CASE("thermostat cone samples point at the truth") {
  const auto mdp = build_thermostat2d();
  const Vector w = normalized(Vector{0.3, 0.7});
  double total = 0.0;
  int n = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto cone = estimate_cone(generate_dataset(mdp, {}, w, seed), {}, seed);
    Rng rng(seed);
    for (int i = 0; i < 24; ++i, ++n) total += cosine_similarity(sample_direction(cone, rng), w);
  }
  CHECK(total / n >= 0.95);
}
