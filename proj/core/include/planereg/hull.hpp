#pragma once

#include <Eigen/Core>

#include <vector>

#include "planereg/geometry.hpp"

namespace planereg {

using Vec2 = Eigen::Vector2d;

/// In-plane orthonormal axes (u, v) for a plane normal; u x v = normal.
struct PlaneAxes {
    Vec3 u, v;
};
PlaneAxes plane_axes(const UnitVec3& normal);

/// Projects points into the (u, v) frame anchored at `anchor`.
std::vector<Vec2> project_to_plane(const std::vector<Vec3>& points, const PlaneAxes& axes,
                                   const Vec3& anchor);

/// Convex hull, counter-clockwise, no repeated first point (Andrew's
/// monotone chain). Fewer than 3 distinct points give a degenerate hull.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

double polygon_area(const std::vector<Vec2>& poly);

/// Area of the intersection of two convex CCW polygons.
double convex_intersection_area(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

/// intersection area / smaller hull area for the convex hulls of the two
/// point sets; 0 when either hull is degenerate.
double hull_overlap_ratio(const std::vector<Vec2>& pts_a, const std::vector<Vec2>& pts_b);

/// Distance from a point to a convex polygon (0 inside).
double distance_to_convex_polygon(const Vec2& p, const std::vector<Vec2>& poly);

}  // namespace planereg
