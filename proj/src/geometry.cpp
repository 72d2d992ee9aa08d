#include "moirl/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

namespace moirl::geometry {

std::size_t affine_rank(const std::vector<Vector>& points, double relative_tolerance) {
  if (points.size() < 2) return 0;
  const std::size_t d = points.front().size();
  double scale = 0.0;
  std::vector<Vector> rows;
  for (std::size_t i = 1; i < points.size(); ++i) {
    rows.push_back(subtract(points[i], points[0]));
    scale = std::max(scale, norm(rows.back()));
  }
  if (scale == 0.0) return 0;
  // Modified Gram-Schmidt with pivoting on the largest remaining row.
  std::size_t rank = 0;
  const double tol = relative_tolerance * scale;
  while (rank < d) {
    std::size_t best = rows.size();
    double best_norm = tol;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double n = norm(rows[i]);
      if (n > best_norm) {
        best_norm = n;
        best = i;
      }
    }
    if (best == rows.size()) break;
    const Vector q = scaled(rows[best], 1.0 / best_norm);
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
    for (auto& r : rows) {
      const double c = dot(r, q);
      for (std::size_t k = 0; k < d; ++k) r[k] -= c * q[k];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::size_t> convex_hull_2d(const std::vector<Vector>& points) {
  const std::size_t n = points.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return points[a][0] < points[b][0] || (points[a][0] == points[b][0] && points[a][1] < points[b][1]);
  });
  // Drop exact duplicates so they cannot appear twice on the hull.
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](std::size_t a, std::size_t b) {
                          return points[a][0] == points[b][0] && points[a][1] == points[b][1];
                        }),
            idx.end());
  if (idx.size() < 3) return idx;

  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    return (points[a][0] - points[o][0]) * (points[b][1] - points[o][1]) -
           (points[a][1] - points[o][1]) * (points[b][0] - points[o][0]);
  };
  std::vector<std::size_t> hull(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i : idx) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], i) <= 0) --k;
    hull[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
    const std::size_t i = idx[t];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], i) <= 0) --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_area(const std::vector<Vector>& points, const std::vector<std::size_t>& ccw) {
  if (ccw.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const auto& p = points[ccw[i]];
    const auto& q = points[ccw[(i + 1) % ccw.size()]];
    twice += p[0] * q[1] - p[1] * q[0];
  }
  return std::abs(twice) / 2.0;
}

namespace {

using P3 = std::array<double, 3>;

P3 sub3(const P3& a, const P3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
P3 cross3(const P3& a, const P3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm3(const P3& a) { return std::sqrt(dot3(a, a)); }

struct Face {
  std::size_t a, b, c;
  P3 normal;  // unit, outward
  double offset;
};

std::vector<P3> to_p3(const std::vector<Vector>& input) {
  std::vector<P3> pts;
  pts.reserve(input.size());
  for (const auto& p : input) pts.push_back({p[0], p[1], p[2]});
  return pts;
}

// Faces of the 3D hull with outward normals. Requires affine rank 3.
std::vector<Face> hull_faces_3d(const std::vector<Vector>& input, P3& interior_out) {
  const std::vector<P3> pts = to_p3(input);
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, norm3(sub3(p, pts[0])));
  const double eps = 1e-10 * scale;

  // Initial tetrahedron from extreme points.
  std::size_t i0 = 0, i1 = 0, i2 = 0, i3 = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double dd = norm3(sub3(pts[i], pts[i0]));
    if (dd > best) best = dd, i1 = i;
  }
  best = -1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double dd = norm3(cross3(sub3(pts[i1], pts[i0]), sub3(pts[i], pts[i0])));
    if (dd > best) best = dd, i2 = i;
  }
  best = -1.0;
  const P3 base_normal = cross3(sub3(pts[i1], pts[i0]), sub3(pts[i2], pts[i0]));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double dd = std::abs(dot3(base_normal, sub3(pts[i], pts[i0])));
    if (dd > best) best = dd, i3 = i;
  }
  const P3 interior = {(pts[i0][0] + pts[i1][0] + pts[i2][0] + pts[i3][0]) / 4,
                       (pts[i0][1] + pts[i1][1] + pts[i2][1] + pts[i3][1]) / 4,
                       (pts[i0][2] + pts[i1][2] + pts[i2][2] + pts[i3][2]) / 4};

  std::vector<Face> faces;
  auto make_face = [&](std::size_t a, std::size_t b, std::size_t c) {
    P3 n = cross3(sub3(pts[b], pts[a]), sub3(pts[c], pts[a]));
    const double len = norm3(n);
    n = {n[0] / len, n[1] / len, n[2] / len};
    Face f{a, b, c, n, dot3(n, pts[a])};
    if (dot3(f.normal, interior) - f.offset > 0) {
      std::swap(f.b, f.c);
      f.normal = {-n[0], -n[1], -n[2]};
      f.offset = -f.offset;
    }
    return f;
  };
  faces.push_back(make_face(i0, i1, i2));
  faces.push_back(make_face(i0, i1, i3));
  faces.push_back(make_face(i0, i2, i3));
  faces.push_back(make_face(i1, i2, i3));

  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<bool> visible(faces.size(), false);
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (dot3(faces[f].normal, pts[p]) - faces[f].offset > eps) visible[f] = any = true;
    }
    if (!any) continue;
    // Directed edges of visible faces; an edge is on the horizon when its
    // reverse does not belong to another visible face.
    std::map<std::pair<std::size_t, std::size_t>, int> edges;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      const Face& fc = faces[f];
      edges[{fc.a, fc.b}]++;
      edges[{fc.b, fc.c}]++;
      edges[{fc.c, fc.a}]++;
    }
    std::vector<Face> kept;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (!visible[f]) kept.push_back(faces[f]);
    for (const auto& [edge, count] : edges) {
      if (edges.count({edge.second, edge.first})) continue;
      Face nf{edge.first, edge.second, p, {}, 0.0};
      P3 n = cross3(sub3(pts[nf.b], pts[nf.a]), sub3(pts[nf.c], pts[nf.a]));
      const double len = norm3(n);
      nf.normal = {n[0] / len, n[1] / len, n[2] / len};
      nf.offset = dot3(nf.normal, pts[nf.a]);
      kept.push_back(nf);
    }
    faces.swap(kept);
  }
  interior_out = interior;
  return faces;
}

}  // namespace

double convex_hull_volume_3d(const std::vector<Vector>& input) {
  if (input.size() < 4) return 0.0;
  for (const auto& p : input)
    if (p.size() != 3) throw InvalidArgument("convex_hull_volume_3d needs 3D points");
  if (affine_rank(input) < 3) return 0.0;
  P3 interior{};
  const std::vector<Face> faces = hull_faces_3d(input, interior);
  const std::vector<P3> pts = to_p3(input);
  double volume = 0.0;
  for (const Face& f : faces) {
    const P3 a = sub3(pts[f.a], interior), b = sub3(pts[f.b], interior), c = sub3(pts[f.c], interior);
    volume += dot3(a, cross3(b, c)) / 6.0;
  }
  return std::abs(volume);
}

double convex_hull_measure(const std::vector<Vector>& points) {
  if (points.empty()) return 0.0;
  const std::size_t d = points.front().size();
  if (points.size() <= d) return 0.0;
  if (d == 2) {
    if (affine_rank(points) < 2) return 0.0;
    return polygon_area(points, convex_hull_2d(points));
  }
  if (d == 3) return convex_hull_volume_3d(points);
  return 0.0;
}

std::vector<std::size_t> convex_hull_vertices(const std::vector<Vector>& points) {
  if (points.empty()) return {};
  const std::size_t d = points.front().size();
  for (const auto& p : points)
    if (p.size() != d) throw InvalidArgument("convex_hull_vertices: points of mixed dimension");
  const std::size_t rank = affine_rank(points);
  std::vector<std::size_t> out;
  if (rank == 0) return {0};
  if (rank == d && d == 2) {
    out = convex_hull_2d(points);
  } else if (rank == d && d == 3) {
    P3 interior{};
    for (const Face& f : hull_faces_3d(points, interior)) out.insert(out.end(), {f.a, f.b, f.c});
  } else if (rank == 1 || rank == 2) {
    // Coordinates in an orthonormal basis of the affine hull, then the 1D/2D hull there.
    std::vector<Vector> basis;
    for (std::size_t i = 1; i < points.size() && basis.size() < rank; ++i) {
      Vector v = subtract(points[i], points[0]);
      for (const auto& q : basis) v = subtract(v, scaled(q, dot(v, q)));
      const double n = norm(v);
      if (n > 1e-9 * (1.0 + norm(points[i]))) basis.push_back(scaled(v, 1.0 / n));
    }
    std::vector<Vector> local;
    for (const auto& p : points) {
      const Vector rel = subtract(p, points[0]);
      Vector c;
      for (const auto& q : basis) c.push_back(dot(rel, q));
      if (c.size() < 2) c.push_back(0.0);
      local.push_back(c);
    }
    if (basis.size() == 2) {
      out = convex_hull_2d(local);
    } else {
      const auto [lo, hi] = std::minmax_element(local.begin(), local.end(),
                                                [](const Vector& a, const Vector& b) { return a[0] < b[0]; });
      out = {static_cast<std::size_t>(lo - local.begin()), static_cast<std::size_t>(hi - local.begin())};
    }
  } else {
    throw InvalidArgument("convex_hull_vertices supports 2D and 3D points only");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace moirl::geometry
