#include "planereg/hull.hpp"

#include <algorithm>
#include <cmath>

namespace planereg {

PlaneAxes plane_axes(const UnitVec3& normal) {
    const WorldFrame f = make_world_frame(normal);
    // (x_w, y_w=normal, z_w) is right-handed, so x_w x z_w = -normal;
    // swap to make u x v = normal.
    return PlaneAxes{f.z_w.vec(), f.x_w.vec()};
}

std::vector<Vec2> project_to_plane(const std::vector<Vec3>& points, const PlaneAxes& axes,
                                   const Vec3& anchor) {
    std::vector<Vec2> out;
    out.reserve(points.size());
    for (const Vec3& p : points) {
        const Vec3 q = p - anchor;
        out.emplace_back(q.dot(axes.u), q.dot(axes.v));
    }
    return out;
}

static double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
    std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Vec2& a, const Vec2& b) { return a == b; }),
                 points.end());
    const size_t n = points.size();
    if (n < 3) return points;

    std::vector<Vec2> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
        while (k >= t && cross2(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

double polygon_area(const std::vector<Vec2>& poly) {
    if (poly.size() < 3) return 0.0;
    double a = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % poly.size()];
        a += p.x() * q.y() - q.x() * p.y();
    }
    return std::abs(a) / 2.0;
}

// Sutherland-Hodgman clip of convex polygon `poly` by the half-plane left of
// edge (a -> b).
static std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& poly, const Vec2& a,
                                         const Vec2& b) {
    std::vector<Vec2> out;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        const double dp = cross2(a, b, p);
        const double dq = cross2(a, b, q);
        if (dp >= 0) out.push_back(p);
        if ((dp > 0 && dq < 0) || (dp < 0 && dq > 0)) {
            const double t = dp / (dp - dq);
            out.push_back(p + t * (q - p));
        }
    }
    return out;
}

double convex_intersection_area(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    if (a.size() < 3 || b.size() < 3) return 0.0;
    std::vector<Vec2> poly = a;
    for (size_t i = 0; i < b.size() && poly.size() >= 3; ++i) {
        poly = clip_half_plane(poly, b[i], b[(i + 1) % b.size()]);
    }
    return polygon_area(poly);
}

double hull_overlap_ratio(const std::vector<Vec2>& pts_a, const std::vector<Vec2>& pts_b) {
    const std::vector<Vec2> ha = convex_hull(pts_a);
    const std::vector<Vec2> hb = convex_hull(pts_b);
    const double area_a = polygon_area(ha);
    const double area_b = polygon_area(hb);
    const double smaller = std::min(area_a, area_b);
    if (smaller <= 0.0) return 0.0;
    return convex_intersection_area(ha, hb) / smaller;
}

double distance_to_convex_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
    if (poly.empty()) return std::numeric_limits<double>::infinity();
    if (poly.size() == 1) return (p - poly[0]).norm();

    bool inside = poly.size() >= 3;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % poly.size()];
        if (cross2(a, b, p) < 0) inside = false;
        const Vec2 ab = b - a;
        const double len2 = ab.squaredNorm();
        double t = len2 > 0 ? (p - a).dot(ab) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, (p - (a + t * ab)).norm());
    }
    return inside ? 0.0 : best;
}

}  // namespace planereg
