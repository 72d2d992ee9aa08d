#pragma once

// Reference implementations the library is checked against. They share no
// code with src/ beyond the MoMdp/Policy containers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "moirl/momdp.hpp"

namespace oracle {

using moirl::MoMdp;
using moirl::Policy;
using moirl::Vector;

/// Exact vector return of a deterministic policy by Gaussian elimination on (I - gamma P_pi) V = R_pi.
inline std::vector<Vector> solve_linear_values(const MoMdp& mdp, const std::vector<std::size_t>& actions) {
  const std::size_t S = mdp.num_states(), d = mdp.num_objectives();
  std::vector<std::vector<double>> a(S, std::vector<double>(S + d, 0.0));
  for (std::size_t s = 0; s < S; ++s) {
    a[s][s] = 1.0;
    const auto row = mdp.next_state_distribution(s, actions[s]);
    for (std::size_t t = 0; t < S; ++t) a[s][t] -= mdp.discount() * row[t];
    const auto r = mdp.reward(s, actions[s]);
    for (std::size_t k = 0; k < d; ++k) a[s][S + k] = r[k];
  }
  for (std::size_t c = 0; c < S; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < S; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < S; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < S + d; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<Vector> v(S, Vector(d));
  for (std::size_t s = 0; s < S; ++s)
    for (std::size_t k = 0; k < d; ++k) v[s][k] = a[s][S + k] / a[s][s];
  return v;
}

inline Vector start_return(const MoMdp& mdp, const std::vector<Vector>& per_state) {
  Vector out(mdp.num_objectives(), 0.0);
  const auto start = mdp.start_distribution();
  for (std::size_t s = 0; s < mdp.num_states(); ++s)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += start[s] * per_state[s][k];
  return out;
}

inline double weighted(const Vector& w, const Vector& v) {
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * v[k];
  return s;
}

/// Best scalarized start value over all |A|^|S| deterministic policies.
inline double enumerate_best(const MoMdp& mdp, const Vector& w) {
  const std::size_t S = mdp.num_states(), A = mdp.num_actions();
  std::vector<std::size_t> actions(S, 0);
  double best = -1e300;
  while (true) {
    best = std::max(best, weighted(w, start_return(mdp, solve_linear_values(mdp, actions))));
    std::size_t i = 0;
    while (i < S && ++actions[i] == A) actions[i++] = 0;
    if (i == S) break;
  }
  return best;
}

/// True when no single-state action change improves the scalarized value of any
/// state by more than `slack`. For a finite discounted MDP this certifies optimality.
inline bool no_improving_deviation(const MoMdp& mdp, const Vector& w, const std::vector<std::size_t>& actions,
                                   double slack) {
  const auto v = solve_linear_values(mdp, actions);
  std::vector<double> sv(mdp.num_states());
  for (std::size_t s = 0; s < sv.size(); ++s) sv[s] = weighted(w, v[s]);
  for (std::size_t s = 0; s < mdp.num_states(); ++s) {
    for (std::size_t a = 0; a < mdp.num_actions(); ++a) {
      const auto r = mdp.reward(s, a);
      double q = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) q += w[k] * r[k];
      const auto row = mdp.next_state_distribution(s, a);
      for (std::size_t t = 0; t < sv.size(); ++t) q += mdp.discount() * row[t] * sv[t];
      if (q > sv[s] + slack) return false;
    }
  }
  return true;
}

inline bool weakly_dominates(const Vector& a, const Vector& b) {
  bool strict = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) return false;
    if (a[k] > b[k]) strict = true;
  }
  return strict;
}

/// O(n^2) non-dominated filter with exact duplicates collapsed.
inline std::vector<Vector> brute_force_front(const std::vector<Vector>& pts) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) dominated = weakly_dominates(pts[j], pts[i]);
    if (dominated) continue;
    if (std::find(out.begin(), out.end(), pts[i]) == out.end()) out.push_back(pts[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Hull vertices of a 2D set by Caratheodory: p is not a vertex iff it lies in a
/// triangle (or on a segment) spanned by other points. Duplicates share the answer.
inline std::vector<bool> hull_vertices_2d(const std::vector<Vector>& pts) {
  auto cross = [](const Vector& o, const Vector& a, const Vector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  auto on_segment = [&](const Vector& p, const Vector& a, const Vector& b) {
    return std::abs(cross(a, b, p)) <= 1e-12 && std::min(a[0], b[0]) <= p[0] + 1e-12 &&
           p[0] <= std::max(a[0], b[0]) + 1e-12 && std::min(a[1], b[1]) <= p[1] + 1e-12 &&
           p[1] <= std::max(a[1], b[1]) + 1e-12;
  };
  auto in_triangle = [&](const Vector& p, const Vector& a, const Vector& b, const Vector& c) {
    const double d1 = cross(a, b, p), d2 = cross(b, c, p), d3 = cross(c, a, p);
    const bool neg = d1 < -1e-12 || d2 < -1e-12 || d3 < -1e-12;
    const bool pos = d1 > 1e-12 || d2 > 1e-12 || d3 > 1e-12;
    return !(neg && pos);
  };
  std::vector<Vector> distinct;
  for (const auto& p : pts)
    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
  std::vector<bool> is_vertex(distinct.size(), true);
  const std::size_t n = distinct.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < n && is_vertex[i]; ++a) {
      if (a == i) continue;
      for (std::size_t b = a + 1; b < n && is_vertex[i]; ++b) {
        if (b == i) continue;
        if (on_segment(distinct[i], distinct[a], distinct[b])) is_vertex[i] = false;
        for (std::size_t c = b + 1; c < n && is_vertex[i]; ++c) {
          if (c == i || std::abs(cross(distinct[a], distinct[b], distinct[c])) <= 1e-12) continue;
          if (in_triangle(distinct[i], distinct[a], distinct[b], distinct[c])) is_vertex[i] = false;
        }
      }
    }
  }
  std::vector<bool> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    out[i] = is_vertex[static_cast<std::size_t>(std::find(distinct.begin(), distinct.end(), pts[i]) - distinct.begin())];
  return out;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace oracle
