#pragma once

#include <optional>
#include <vector>

#include "planereg/geometry.hpp"

namespace planereg {

struct TrackConfig {
    double support_dist = 0.05;      // meters
    double min_support_ratio = 0.3;  // fraction of the original inlier count
};

struct TrackedPlane {
    int index_a = 0;  // plane index in view a
    Plane refined;    // refit on the view-b support points
};

/// Transports view-a planes into view b with the prior motion and looks for
/// support in the view-b cloud: points within support_dist of the
/// transported plane AND inside its 2D hull dilated by support_dist. Planes
/// with support of at least min_support_ratio times their original inlier
/// count are refit on the support points and returned; the rest are dropped.
std::vector<TrackedPlane> track_planes(const std::vector<Plane>& planes_a,
                                       const std::vector<Vec3>& cloud_b,
                                       const std::optional<std::vector<Rgb>>& colors_b,
                                       const RigidMotion& prior, const TrackConfig& cfg = {});

}  // namespace planereg
