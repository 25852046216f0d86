#include "planereg/tracking.hpp"

#include "planereg/hull.hpp"

namespace planereg {

std::vector<TrackedPlane> track_planes(const std::vector<Plane>& planes_a,
                                       const std::vector<Vec3>& cloud_b,
                                       const std::optional<std::vector<Rgb>>& colors_b,
                                       const RigidMotion& prior, const TrackConfig& cfg) {
    std::vector<TrackedPlane> out;
    if (cloud_b.empty()) return out;

    for (int i = 0; i < static_cast<int>(planes_a.size()); ++i) {
        const Plane transported = transform_plane(prior, planes_a[i]);
        if (transported.inliers.size() < 3) continue;

        const PlaneAxes axes = plane_axes(transported.normal);
        const std::vector<Vec2> hull = convex_hull(
            project_to_plane(transported.inliers, axes, transported.centroid));

        std::vector<Vec3> support;
        std::optional<std::vector<Rgb>> support_colors;
        if (colors_b) support_colors.emplace();
        for (std::size_t k = 0; k < cloud_b.size(); ++k) {
            const Vec3& p = cloud_b[k];
            if (transported.distance_to(p) > cfg.support_dist) continue;
            const Vec3 q = p - transported.centroid;
            const Vec2 uv(q.dot(axes.u), q.dot(axes.v));
            if (distance_to_convex_polygon(uv, hull) > cfg.support_dist) continue;
            support.push_back(p);
            if (support_colors) support_colors->push_back((*colors_b)[k]);
        }

        const double needed = cfg.min_support_ratio * static_cast<double>(planes_a[i].inliers.size());
        if (static_cast<double>(support.size()) < needed || support.size() < 3) continue;

        try {
            out.push_back({i, fit_plane(support, std::move(support_colors))});
        } catch (const DegenerateInput&) {
            // support set collapsed to a line; treat as not seen
        }
    }
    return out;
}

}  // namespace planereg
