#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "moirl/envs.hpp"
#include "moirl/errors.hpp"
#include "moirl/planner.hpp"
#include "oracles.hpp"

using namespace moirl;

TEST_CASE("one-state MDP returns r / (1 - gamma)") {
  MoMdp mdp(1, 1, 2, 0.9, {1.0}, {0.3, 0.8}, {1.0});
  const auto v = evaluate_policy(mdp, Policy::uniform(1, 1));
  CHECK(v[0] == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(v[1] == doctest::Approx(8.0).epsilon(1e-7));
}

TEST_CASE("zero rewards evaluate to zero") {
  MoMdp mdp(2, 2, 3, 0.8, {1, 0, 0, 1, 0.5, 0.5, 0, 1}, std::vector<double>(12, 0.0), {0.5, 0.5});
  const auto v = evaluate_policy(mdp, Policy::uniform(2, 2));
  for (std::size_t k = 0; k < 3; ++k) CHECK(v[k] == 0.0);
}

TEST_CASE("construction rejects broken tensors") {
  CHECK_THROWS_AS(MoMdp(1, 1, 1, 1.0, {1.0}, {0.0}, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(MoMdp(1, 1, 1, 0.9, {0.9}, {0.0}, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(MoMdp(2, 1, 1, 0.9, {1, 0, 0, 1}, {0.0, NAN}, {0.5, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(MoMdp(2, 1, 1, 0.9, {1, 0, 0, 1}, {0.0, 0.0}, {0.7, 0.7}), InvalidArgument);
  CHECK_THROWS_AS(MoMdp(2, 1, 1, 0.9, {1, 0, 0}, {0.0, 0.0}, {0.5, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(Policy(1, 2, {0.7, 0.7}), InvalidArgument);
}

TEST_CASE("policy evaluation matches a direct linear solve") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto mdp = helpers::random_mdp(6, 3, 3, 0.9, seed);
    const auto actions = helpers::random_actions(6, 3, seed + 100);
    const auto v = evaluate_policy(mdp, Policy::deterministic(actions, 3));
    const auto ref = oracle::start_return(mdp, oracle::solve_linear_values(mdp, actions));
    for (std::size_t k = 0; k < 3; ++k) CHECK(v[k] == doctest::Approx(ref[k]).epsilon(1e-7));
  }
}

TEST_CASE("evaluation is linear in the reward weights") {
  const auto mdp = helpers::random_mdp(5, 2, 3, 0.85, 7);
  const Policy pi = Policy::uniform(5, 2);
  const Vector w{0.2, -1.5, 0.7};
  const auto v = evaluate_policy(mdp, pi);
  const auto scalar = evaluate_policy(mdp.scalarized(w), pi);
  CHECK(std::abs(dot(w, v.values) - scalar[0]) <= 10 * 1e-8);
}

TEST_CASE("returns respect the discount bound") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto mdp = helpers::random_mdp(4, 3, 2, 0.95, seed);
    const auto v = evaluate_policy(mdp, Policy::uniform(4, 3));
    const double bound = mdp.max_abs_reward() / (1 - mdp.discount());
    for (double x : v.values) CHECK(std::abs(x) <= bound + 1e-9);
  }
}

TEST_CASE("trajectory returns are discounted sums") {
  MoMdp one(1, 1, 2, 0.5, {1.0}, {1.0, 2.0}, {1.0});
  CHECK(trajectory_return(one, {{{0, 0}}}).values == Vector{1.0, 2.0});
  MoMdp two(1, 1, 2, 0.5, {1.0}, {1.0, 0.0}, {1.0});
  CHECK(trajectory_return(two, {{{0, 0}, {0, 0}}}).values == Vector{1.5, 0.0});

  const auto grid = build_gridworld3d();
  const auto traj = rollout(grid, Policy::uniform(grid.num_states(), grid.num_actions()), 10, 42);
  REQUIRE(traj.horizon() == 10);
  Vector ref(3, 0.0);
  double g = 1.0;
  for (const auto& step : traj.steps) {
    for (std::size_t k = 0; k < 3; ++k) ref[k] += g * grid.reward(step.state, step.action)[k];
    g *= grid.discount();
  }
  const auto v = trajectory_return(grid, traj);
  for (std::size_t k = 0; k < 3; ++k) CHECK(v[k] == doctest::Approx(ref[k]).epsilon(1e-14));
}

TEST_CASE("rollouts are deterministic given the seed") {
  const auto mdp = helpers::random_mdp(5, 2, 2, 0.9, 3);
  const Policy pi = Policy::uniform(5, 2);
  CHECK(rollout(mdp, pi, 50, 9) == rollout(mdp, pi, 50, 9));

  MoMdp chain(3, 1, 1, 0.9, {0, 1, 0, 0, 0, 1, 1, 0, 0}, {0, 0, 0}, {1, 0, 0});
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto t = rollout(chain, Policy::uniform(3, 1), 6, seed);
    for (std::size_t i = 0; i < 6; ++i) CHECK(t.steps[i].state == i % 3);
  }
}

TEST_CASE("visit frequencies match the chain occupancy") {
  const auto mdp = helpers::random_mdp(4, 2, 1, 0.9, 11);
  const Policy pi = Policy::uniform(4, 2);
  const std::size_t horizon = 8, runs = 10000;
  std::vector<double> counts(4, 0.0);
  for (std::size_t r = 0; r < runs; ++r)
    for (const auto& step : rollout(mdp, pi, horizon, r).steps) counts[step.state] += 1.0;

  std::vector<double> dist(mdp.start_distribution().begin(), mdp.start_distribution().end());
  std::vector<double> occupancy(4, 0.0);
  for (std::size_t t = 0; t < horizon; ++t) {
    std::vector<double> next(4, 0.0);
    for (std::size_t s = 0; s < 4; ++s) {
      occupancy[s] += dist[s];
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t u = 0; u < 4; ++u) next[u] += dist[s] * 0.5 * mdp.next_state_distribution(s, a)[u];
    }
    dist = next;
  }
  double tv = 0.0;
  for (std::size_t s = 0; s < 4; ++s)
    tv += std::abs(counts[s] / static_cast<double>(runs * horizon) - occupancy[s] / static_cast<double>(horizon));
  CHECK(tv / 2 < 0.02);
}

TEST_CASE("thermostat comfort policy agrees with long Monte-Carlo rollouts") {
  const auto mdp = build_thermostat2d();
  // heat from cool, idle at normal, cool from hot
  const Policy pi = Policy::deterministic(std::vector<std::size_t>{0, 2, 1}, 3);
  const auto exact = evaluate_policy(mdp, pi);
  // Stratify over start states: the only randomness in this MDP is the start.
  Vector mean(2, 0.0);
  const std::size_t runs = 200;
  for (std::size_t s0 = 0; s0 < 3; ++s0) {
    std::vector<double> start(3, 0.0);
    start[s0] = 1.0;
    const MoMdp from(3, 3, 2, mdp.discount(), mdp.transition_tensor(), mdp.reward_tensor(), start);
    for (std::size_t r = 0; r < runs; ++r) {
      const auto v = trajectory_return(from, rollout(from, pi, 1000, r));
      for (std::size_t k = 0; k < 2; ++k) mean[k] += mdp.start_distribution()[s0] * v[k] / runs;
    }
  }
  for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(mean[k] - exact[k]) < 1e-3);
}

TEST_CASE("Monte-Carlo mean is within three standard errors") {
  const auto mdp = helpers::random_mdp(5, 3, 2, 0.8, 5);
  const Policy pi = Policy::uniform(5, 3);
  const auto exact = evaluate_policy(mdp, pi);
  const std::size_t M = 4000;
  std::vector<Vector> samples;
  for (std::size_t r = 0; r < M; ++r) samples.push_back(trajectory_return(mdp, rollout(mdp, pi, 200, r)).values);
  for (std::size_t k = 0; k < 2; ++k) {
    double m = 0, sq = 0;
    for (const auto& s : samples) m += s[k];
    m /= M;
    for (const auto& s : samples) sq += (s[k] - m) * (s[k] - m);
    const double se = std::sqrt(sq / (M - 1)) / std::sqrt(static_cast<double>(M));
    CHECK(std::abs(m - exact[k]) <= 3 * se + 1e-9);
  }
}
