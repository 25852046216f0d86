#include "planereg/plane_detection.hpp"

#include <algorithm>
#include <cmath>

#include "planereg/rng.hpp"

namespace planereg {

namespace {

struct Hypothesis {
    Vec3 normal = Vec3::Zero();
    double offset = 0.0;
    std::size_t inlier_count = 0;
    double sq_dist_sum = 0.0;
    bool valid = false;
};

Hypothesis make_hypothesis(const Vec3& a, const Vec3& b, const Vec3& c) {
    Hypothesis h;
    const Vec3 n = (b - a).cross(c - a);
    const double len = n.norm();
    if (len < 1e-12) return h;  // collinear sample
    h.normal = n / len;
    h.offset = h.normal.dot(a);
    h.valid = true;
    return h;
}

}  // namespace

std::vector<Plane> detect_planes(const std::vector<Vec3>& cloud,
                                 const std::optional<std::vector<Rgb>>& colors,
                                 const DetectConfig& config) {
    std::vector<Plane> planes;
    if (cloud.empty()) return planes;

    const std::size_t min_inliers = config.resolved_min_inliers(cloud.size());
    Rng rng(mix_seed(config.rng_seed, 0x706C616E65ULL));

    std::vector<std::size_t> remaining(cloud.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

    std::vector<char> is_inlier(cloud.size(), 0);

    while (planes.size() < config.max_planes && remaining.size() >= 3) {
        Hypothesis best;
        for (std::size_t it = 0; it < config.ransac_iterations; ++it) {
            const std::size_t i = remaining[rng.below(remaining.size())];
            const std::size_t j = remaining[rng.below(remaining.size())];
            const std::size_t k = remaining[rng.below(remaining.size())];
            if (i == j || j == k || i == k) continue;
            Hypothesis h = make_hypothesis(cloud[i], cloud[j], cloud[k]);
            if (!h.valid) continue;

            for (const std::size_t idx : remaining) {
                const double dist = std::abs(h.normal.dot(cloud[idx]) - h.offset);
                if (dist <= config.distance_threshold) {
                    ++h.inlier_count;
                    h.sq_dist_sum += dist * dist;
                }
            }
            if (h.inlier_count > best.inlier_count ||
                (h.inlier_count == best.inlier_count && h.inlier_count > 0 &&
                 h.sq_dist_sum < best.sq_dist_sum)) {
                best = h;
            }
        }
        if (!best.valid || best.inlier_count < min_inliers) break;

        // collect hypothesis inliers, refit once, then keep only points still
        // inside the distance band of the refit plane
        std::vector<std::size_t> support;
        support.reserve(best.inlier_count);
        for (const std::size_t idx : remaining) {
            if (std::abs(best.normal.dot(cloud[idx]) - best.offset) <= config.distance_threshold) {
                support.push_back(idx);
            }
        }

        std::vector<Vec3> pts;
        pts.reserve(support.size());
        for (const std::size_t idx : support) pts.push_back(cloud[idx]);

        Plane refit;
        try {
            refit = fit_plane(pts);
        } catch (const DegenerateInput&) {
            break;  // pathological support set; nothing better will follow
        }

        std::vector<std::size_t> kept;
        kept.reserve(support.size());
        for (const std::size_t idx : support) {
            if (refit.distance_to(cloud[idx]) <= config.distance_threshold) kept.push_back(idx);
        }
        if (kept.size() < min_inliers || kept.size() < 3) break;

        pts.clear();
        for (const std::size_t idx : kept) pts.push_back(cloud[idx]);
        std::optional<std::vector<Rgb>> plane_colors;
        if (colors) {
            plane_colors.emplace();
            plane_colors->reserve(kept.size());
            for (const std::size_t idx : kept) plane_colors->push_back((*colors)[idx]);
        }

        Plane plane;
        try {
            plane = fit_plane(pts, std::move(plane_colors));
        } catch (const DegenerateInput&) {
            break;
        }
        // the second refit can push a handful of border points out of the
        // band again; drop them so the distance invariant holds exactly
        {
            std::vector<Vec3> in;
            std::optional<std::vector<Rgb>> in_colors;
            if (plane.colors) in_colors.emplace();
            for (std::size_t m = 0; m < plane.inliers.size(); ++m) {
                if (plane.distance_to(plane.inliers[m]) <= config.distance_threshold) {
                    in.push_back(plane.inliers[m]);
                    if (in_colors) in_colors->push_back((*plane.colors)[m]);
                }
            }
            plane.inliers = std::move(in);
            plane.colors = std::move(in_colors);
        }
        if (plane.inliers.size() < min_inliers) break;

        for (const std::size_t idx : kept) is_inlier[idx] = 1;
        remaining.erase(std::remove_if(remaining.begin(), remaining.end(),
                                       [&](std::size_t idx) { return is_inlier[idx]; }),
                        remaining.end());
        planes.push_back(std::move(plane));
    }

    std::stable_sort(planes.begin(), planes.end(), [](const Plane& a, const Plane& b) {
        return a.inliers.size() > b.inliers.size();
    });
    return planes;
}

}  // namespace planereg
