#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "moirl/geometry.hpp"
#include "moirl/pareto.hpp"
#include "oracles.hpp"

using namespace moirl;

TEST_CASE("dominance") {
  CHECK(dominates(Vector{1, 2}, Vector{1, 1}));
  CHECK_FALSE(dominates(Vector{2, 1}, Vector{1, 2}));
  CHECK_FALSE(dominates(Vector{1, 2}, Vector{2, 1}));
  CHECK_FALSE(dominates(Vector{1, 1}, Vector{1, 1}));
}

TEST_CASE("front insertion basics") {
  ParetoFrontEstimate front;
  CHECK(front.insert({{1.0, 0.0}}));
  CHECK_FALSE(front.insert({{1.0, 0.0}}));
  CHECK(front.insertion_log().back().decision == InsertDecision::Duplicate);
  CHECK_FALSE(front.insert({{0.5, 0.0}}));
  CHECK(front.insertion_log().back().decision == InsertDecision::Dominated);
  CHECK(front.insert({{0.0, 1.0}}));
  CHECK(front.insert({{2.0, 2.0}}));
  CHECK(front.size() == 1);
  CHECK(front.insertion_log().back().removed == 2);
}

namespace {

std::vector<Vector> sorted_values(const ParetoFrontEstimate& front) {
  auto v = front.values();
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("incremental front equals the brute-force filter on 100 random streams") {
  std::mt19937_64 rng(11);
  for (int stream = 0; stream < 100; ++stream) {
    const std::size_t d = 2 + stream % 3;
    std::vector<Vector> pts(50, Vector(d));
    for (auto& p : pts)
      for (auto& x : p) x = static_cast<double>(rng() % 8);  // coarse grid: ties and duplicates
    ParetoFrontEstimate front;
    for (const auto& p : pts) front.insert({p});
    CHECK(sorted_values(front) == oracle::brute_force_front(pts));

    const auto& members = front.points();
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = 0; j < members.size(); ++j)
        if (i != j) CHECK_FALSE(dominates(members[i].value, members[j].value));

    std::shuffle(pts.begin(), pts.end(), rng);
    ParetoFrontEstimate shuffled;
    for (const auto& p : pts) shuffled.insert({p});
    CHECK(sorted_values(shuffled) == sorted_values(front));
  }
}

TEST_CASE("incremental front on continuous streams up to 200 candidates") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int stream = 0; stream < 20; ++stream) {
    std::vector<Vector> pts(200, Vector(3));
    for (auto& p : pts)
      for (auto& x : p) x = g(rng);
    ParetoFrontEstimate front;
    for (const auto& p : pts) front.insert({p});
    CHECK(sorted_values(front) == oracle::brute_force_front(pts));
  }
}

TEST_CASE("metrics of a perfect singleton") {
  ParetoFrontEstimate front;
  front.insert({{1.0, 2.0}});
  const Vector w = normalized(Vector{0.3, 0.7});
  const std::vector<Vector> inferred{w};
  const auto m = compute_metrics(front, inferred, w);
  CHECK(m.pref_l1_error == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(m.cosine_similarity == doctest::Approx(1.0));
  CHECK(m.diversity_l2_spread == 0.0);
  CHECK(m.smoothness_convex_volume == 0.0);
  CHECK(m.num_pareto_points == 1);
}

TEST_CASE("metrics of two axis points") {
  ParetoFrontEstimate front;
  front.insert({{0.0, 1.0}});
  front.insert({{1.0, 0.0}});
  const std::vector<Vector> inferred{{0.5, 0.5}};
  const auto m = compute_metrics(front, inferred, normalized(Vector{0.5, 0.5}));
  CHECK(m.diversity_l2_spread == doctest::Approx(std::sqrt(2.0)));
  CHECK(m.smoothness_convex_volume == 0.0);
  CHECK(m.num_pareto_points == 2);
}

TEST_CASE("metric bounds on random fronts") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    ParetoFrontEstimate front;
    const std::size_t n = 1 + i % 6;
    for (std::size_t k = 0; k < n; ++k) front.insert({{u(rng), u(rng), u(rng)}});
    const std::vector<Vector> inferred{{u(rng), u(rng), u(rng)}};
    const auto m = compute_metrics(front, inferred, normalized(Vector{u(rng), u(rng), u(rng)}));
    CHECK(m.cosine_similarity >= -1.0);
    CHECK(m.cosine_similarity <= 1.0);
    CHECK((m.diversity_l2_spread == 0.0) == (front.size() <= 1));
    if (front.size() <= 3) CHECK(m.smoothness_convex_volume == 0.0);
  }
}

TEST_CASE("hull volume of known solids") {
  std::vector<Vector> cube;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) cube.push_back({double(x), double(y), double(z)});
  cube.push_back({0.5, 0.5, 0.5});
  CHECK(geometry::convex_hull_volume_3d(cube) == doctest::Approx(1.0));
  const std::vector<Vector> simplex{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(geometry::convex_hull_volume_3d(simplex) == doctest::Approx(1.0 / 6.0));
  const std::vector<Vector> flat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0.3, 0.3, 0}};
  CHECK(geometry::convex_hull_volume_3d(flat) == 0.0);
  const std::vector<Vector> square{{0, 0}, {2, 0}, {2, 1}, {0, 1}, {1, 0.5}};
  CHECK(geometry::convex_hull_measure(square) == doctest::Approx(2.0));
}

TEST_CASE("hull vertices match an independent 2D test") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vector> pts(4 + trial % 12, Vector(2));
    for (auto& p : pts)
      for (auto& x : p) x = static_cast<double>(rng() % 6);
    const auto expect = oracle::hull_vertices_2d(pts);
    const auto got = geometry::convex_hull_vertices(pts);
    // convex_hull_vertices reports one index per distinct vertex.
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const bool listed = std::any_of(got.begin(), got.end(), [&](std::size_t j) { return pts[j] == pts[i]; });
      CHECK(listed == expect[i]);
    }
  }
}

TEST_CASE("hull vertices of degenerate sets") {
  CHECK(geometry::convex_hull_vertices({{1.0, 1.0}}) == std::vector<std::size_t>{0});
  CHECK(geometry::convex_hull_vertices({{0, 0}, {1, 1}, {2, 2}}) == std::vector<std::size_t>{0, 2});
  CHECK(geometry::affine_rank({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}) == 1);
}
