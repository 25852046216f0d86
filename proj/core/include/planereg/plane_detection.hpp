#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "planereg/geometry.hpp"

namespace planereg {

struct DetectConfig {
    double distance_threshold = kFitTolerance;  // meters
    /// Minimum inlier count for a plane to be kept. 0 means "auto":
    /// max(500, 1% of the cloud size).
    std::size_t min_inliers = 0;
    std::size_t max_planes = 10;
    std::size_t ransac_iterations = 1000;
    std::uint64_t rng_seed = 0;

    std::size_t resolved_min_inliers(std::size_t cloud_size) const {
        if (min_inliers > 0) return min_inliers;
        return std::max<std::size_t>(500, cloud_size / 100);
    }
};

/// Greedy sequential RANSAC: hypothesize planes through 3 sampled points,
/// keep the best-supported one, remove its inliers, repeat. Planes are
/// returned in decreasing inlier-count order, refit on their inlier sets,
/// with disjoint inliers. Deterministic given the seed. Returns an empty
/// list when nothing reaches the inlier minimum.
std::vector<Plane> detect_planes(const std::vector<Vec3>& cloud,
                                 const std::optional<std::vector<Rgb>>& colors,
                                 const DetectConfig& config = {});

}  // namespace planereg
