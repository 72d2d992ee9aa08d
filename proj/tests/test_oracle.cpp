#include <doctest.h>

#include <cmath>
#include <random>

#include "moirl/envs.hpp"
#include "moirl/errors.hpp"
#include "moirl/oracle.hpp"

using namespace moirl;

TEST_CASE("preference probability values") {
  const Vector v{0.4, 0.6};
  CHECK(preference_probability(Vector{0.3, 0.7}, v, v, 5.0) == 0.5);
  CHECK(preference_probability(Vector{1, 0}, Vector{1, 0}, Vector{0, 0}, 5.0) ==
        doctest::Approx(0.993307149075715).epsilon(1e-12));
  CHECK(logistic(0.0) == 0.5);
  CHECK(std::isfinite(logistic(-1e308)));
  CHECK(logistic(1e308) == 1.0);
}

TEST_CASE("complement identity holds exactly") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const Vector w{n(rng), n(rng), n(rng)}, a{n(rng), n(rng), n(rng)}, b{n(rng), n(rng), n(rng)};
    const double eta = std::exp(n(rng));
    CHECK(preference_probability(w, a, b, eta) + preference_probability(w, b, a, eta) == 1.0);
  }
}

TEST_CASE("probability grows with eta and depends on eta * w only") {
  const Vector w{0.6, 0.8}, a{1.0, 0.5}, b{0.2, 0.4};
  double prev = 0.5;
  for (double eta : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double p = preference_probability(w, a, b, eta);
    CHECK(p > prev);
    prev = p;
    CHECK(p == doctest::Approx(preference_probability(scaled(w, eta), a, b, 1.0)).epsilon(1e-14));
  }
}

TEST_CASE("label sampling") {
  Rng rng(123);
  const Vector z{0.0, 0.0};
  double ones = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) ones += sample_label(Vector{1, 1}, z, z, 5.0, rng);
  CHECK(ones / n >= 0.494);
  CHECK(ones / n <= 0.506);

  for (int i = 0; i < 1000; ++i) CHECK(sample_label(Vector{1, 0}, Vector{1, 0}, z, 1e4, rng) == 1);
  CHECK(sample_label(Vector{1, 1}, Vector{1, 0}, z, 1.0, 99) == sample_label(Vector{1, 1}, Vector{1, 0}, z, 1.0, 99));
}

TEST_CASE("thermostat label frequencies follow the model") {
  const auto mdp = build_thermostat2d();
  const Vector w = normalized(Vector{0.3, 0.7});
  DatasetOptions opts;
  const auto data = generate_dataset(mdp, opts, w, 4);
  Rng rng(8);
  const int draws = 4000;
  int outside = 0;
  for (const auto& pair : data.pairs) {
    const auto& vi = data.items[pair.item_i].vector_return;
    const auto& vj = data.items[pair.item_j].vector_return;
    const double p = preference_probability(w, vi, vj, opts.eta);
    double ones = 0;
    for (int i = 0; i < draws; ++i) ones += sample_label(w, vi, vj, opts.eta, rng);
    const double band = 3.0 * std::sqrt(p * (1 - p) / draws) + 1e-12;
    if (std::abs(ones / draws - p) > band) ++outside;
  }
  // 3-sigma bands: a handful of the 60 pairs may fall outside by chance.
  CHECK(outside <= 3);
}

TEST_CASE("identical items give fair labels") {
  MoMdp mdp(1, 1, 2, 0.9, {1.0}, {0.5, 0.5}, {1.0});
  DatasetOptions opts;
  opts.num_items = 2;
  opts.num_pairs = 4000;
  const auto data = generate_dataset(mdp, opts, Vector{0.3, 0.7}, 1);
  double ones = 0;
  for (const auto& p : data.pairs) ones += p.label;
  CHECK(std::abs(ones / 4000 - 0.5) < 4 * 0.5 / std::sqrt(4000.0));
}

TEST_CASE("datasets are reproducible and round-trip through text") {
  const auto mdp = build_thermostat3d();
  const Vector w = normalized(Vector{0.39, 0.15, 0.46});
  const auto a = generate_dataset(mdp, {}, w, 77);
  const auto b = generate_dataset(mdp, {}, w, 77);
  CHECK(a == b);
  CHECK(dataset_to_text(a) == dataset_to_text(b));
  const auto c = dataset_from_text(dataset_to_text(a));
  CHECK(c == a);
  a.validate();

  DatasetOptions traj;
  traj.item_source = ItemSource::TrajectoryReturn;
  const auto t = generate_dataset(mdp, traj, w, 77);
  CHECK(t.items.front().provenance == ItemSource::TrajectoryReturn);
  CHECK(dataset_from_text(dataset_to_text(t)) == t);
}

TEST_CASE("true weight out-scores the orthogonal weight") {
  const auto mdp = build_thermostat2d();
  const Vector w = normalized(Vector{0.3, 0.7});
  const Vector orth = normalized(Vector{0.7, -0.3});
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto data = generate_dataset(mdp, {}, w, seed);
    if (label_log_likelihood(data, w) > label_log_likelihood(data, orth)) ++wins;
  }
  CHECK(wins >= 18);
}

TEST_CASE("dataset validation") {
  auto data = PreferenceDataset::from_differences({{1.0, 0.0}, {0.0, 1.0}}, {1, 0}, 2.0);
  data.validate();
  auto bad = data;
  bad.pairs[0].label = 2;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = data;
  bad.pairs[1].item_j = 99;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = data;
  bad.eta = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  CHECK_THROWS_AS(dataset_from_text("garbage"), FormatError);
}
