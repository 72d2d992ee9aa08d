#pragma once

#include <filesystem>
#include <random>
#include <vector>

#include "moirl/momdp.hpp"

namespace helpers {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(MOIRL_SOURCE_DIR) / "fixtures" / name;
}

inline std::filesystem::path config(const std::string& name) {
  return std::filesystem::path(MOIRL_SOURCE_DIR) / "configs" / name;
}

/// Random MDP with rewards in [0, 1]; transitions are point masses when `deterministic`.
inline moirl::MoMdp random_mdp(std::size_t S, std::size_t A, std::size_t d, double gamma, std::uint64_t seed,
                               bool deterministic = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> P(S * A * S, 0.0), R(S * A * d), start(S);
  for (std::size_t sa = 0; sa < S * A; ++sa) {
    if (deterministic) {
      P[sa * S + rng() % S] = 1.0;
    } else {
      double total = 0.0;
      for (std::size_t t = 0; t < S; ++t) total += P[sa * S + t] = u(rng);
      for (std::size_t t = 0; t < S; ++t) P[sa * S + t] /= total;
    }
    for (std::size_t k = 0; k < d; ++k) R[sa * d + k] = u(rng);
  }
  double total = 0.0;
  for (auto& x : start) total += x = u(rng);
  for (auto& x : start) x /= total;
  return moirl::MoMdp(S, A, d, gamma, std::move(P), std::move(R), std::move(start));
}

inline std::vector<std::size_t> random_actions(std::size_t S, std::size_t A, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> out(S);
  for (auto& a : out) a = rng() % A;
  return out;
}

}  // namespace helpers
