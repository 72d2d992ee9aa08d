#pragma once

#include <cstddef>
#include <vector>

#include "moirl/linalg.hpp"

namespace moirl::geometry {

/// Dimension of the affine hull of the points (0 for a single point).
std::size_t affine_rank(const std::vector<Vector>& points, double relative_tolerance = 1e-10);

/// Indices of the 2D convex hull vertices in counter-clockwise order.
/// Collinear boundary points are not reported as vertices.
std::vector<std::size_t> convex_hull_2d(const std::vector<Vector>& points);

double polygon_area(const std::vector<Vector>& points, const std::vector<std::size_t>& ccw_indices);

/// Volume of the 3D convex hull (0 for affinely degenerate input).
double convex_hull_volume_3d(const std::vector<Vector>& points);

/// Lebesgue measure of the convex hull in its ambient dimension d in {2, 3};
/// zero when there are at most d points or they are affinely degenerate.
double convex_hull_measure(const std::vector<Vector>& points);

/// Sorted indices of the hull vertices for 2D or 3D points. Affinely degenerate
/// sets are handled in their own affine hull (a segment keeps its two ends).
std::vector<std::size_t> convex_hull_vertices(const std::vector<Vector>& points);

}  // namespace moirl::geometry
