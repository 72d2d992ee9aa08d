#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "moirl/errors.hpp"

namespace moirl {

using Vector = std::vector<double>;

inline void require_same_size(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("vector length mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Vector subtract(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vector scaled(std::span<const double> a, double s) {
  Vector out(a.begin(), a.end());
  for (double& x : out) x *= s;
  return out;
}

inline bool all_finite(std::span<const double> a) {
  for (double x : a)
    if (!std::isfinite(x)) return false;
  return true;
}

/// L2-normalized copy. Throws on a zero or non-finite vector.
inline Vector normalized(std::span<const double> a) {
  const double n = norm(a);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot normalize a zero or non-finite vector");
  return scaled(a, 1.0 / n);
}

/// Copy rescaled so that the absolute values of the entries sum to one.
inline Vector simplex_normalized(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += std::abs(x);
  if (!(s > 0.0)) throw InvalidArgument("cannot simplex-normalize a zero vector");
  return scaled(a, 1.0 / s);
}

inline double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  const double na = norm(a), nb = norm(b);
  if (!(na > 0.0) || !(nb > 0.0)) throw InvalidArgument("cosine of a zero vector");
  double c = dot(a, b) / (na * nb);
  return c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
}

}  // namespace moirl
