#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace moirl {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for stream `stream` of `base`. Distinct (base, stream) pairs give unrelated seeds.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  return mix_seed(mix_seed(base) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                    std::uint64_t sub) noexcept {
  return derive_seed(derive_seed(base, stream), sub);
}

// Hand-rolled so that streams are identical across standard library implementations.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)) % n;
}

/// Index drawn from a discrete distribution given by (non-negative) weights.
inline std::size_t sample_categorical(Rng& rng, std::span<const double> probs) {
  double total = 0.0;
  for (double p : probs) total += p;
  double u = uniform01(rng) * total;
  std::size_t last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last = i;
    if (u < probs[i]) return i;
    u -= probs[i];
  }
  return last;
}

/// Symmetric Dirichlet draw. Concentration 1 uses exponential spacings.
inline std::vector<double> sample_dirichlet(Rng& rng, std::size_t dim, double concentration = 1.0) {
  std::vector<double> out(dim);
  double total = 0.0;
  for (auto& x : out) {
    if (concentration == 1.0) {
      x = -std::log1p(-uniform01(rng));
    } else {
      std::gamma_distribution<double> gamma(concentration, 1.0);
      x = gamma(rng);
    }
    total += x;
  }
  for (auto& x : out) x /= total;
  return out;
}

}  // namespace moirl
