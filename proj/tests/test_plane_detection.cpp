#include <doctest.h>

#include <planereg/plane_detection.hpp>
#include <planereg/toy_bench.hpp>

#include <cmath>
#include <set>

#include "test_support.hpp"

using namespace planereg;

namespace {

// grid samples on two well-separated planes: y=0 (x kept below 0.9 so no
// point also lies on the x=1 plane) and x=1
std::vector<Vec3> two_plane_cloud() {
    std::vector<Vec3> cloud;
    for (int i = 0; i < 45; ++i) {
        for (int j = 0; j < 45; ++j) {
            cloud.emplace_back(-1.0 + 1.9 * i / 44.0, 0.0, -1.0 + 2.0 * j / 44.0);
        }
    }
    for (int i = 0; i < 45; ++i) {
        for (int j = 0; j < 45; ++j) {
            cloud.emplace_back(1.0, 0.1 + 1.9 * i / 44.0, -1.0 + 2.0 * j / 44.0);
        }
    }
    return cloud;
}

}  // namespace

TEST_CASE("detect_planes on a noiseless two-plane cloud") {
    const std::vector<Vec3> cloud = two_plane_cloud();
    DetectConfig cfg;
    cfg.min_inliers = 500;
    cfg.rng_seed = 11;
    const std::vector<Plane> planes = detect_planes(cloud, std::nullopt, cfg);

    REQUIRE(planes.size() == 2);
    for (const Plane& p : planes) {
        CHECK(p.inliers.size() == 2025);
        const double to_y = std::abs(std::abs(p.normal.y()) - 1.0);
        const double to_x = std::abs(std::abs(p.normal.x()) - 1.0);
        CHECK(std::min(to_x, to_y) < 1e-6);
    }
}

TEST_CASE("detect_planes returns empty when nothing reaches min_inliers") {
    Rng rng(5);
    std::vector<Vec3> cloud;
    for (int i = 0; i < 100; ++i) cloud.push_back(testing::random_in_ball(rng));
    DetectConfig cfg;
    cfg.min_inliers = 500;
    CHECK(detect_planes(cloud, std::nullopt, cfg).empty());
    CHECK(detect_planes({}, std::nullopt, cfg).empty());
}

TEST_CASE("detect_planes recovers the noisy synthetic room") {
    // four planes sampled at 5% noise; the generator is its own oracle
    Rng rng(90);
    const ToyScene scene = make_toy_scene();
    NoiseConfig noise;
    noise.level = 5.0;

    std::vector<Vec3> cloud;
    for (const Rect& r : scene.rects) {
        const Plane p = perturb_plane(r, noise, rng);
        cloud.insert(cloud.end(), p.inliers.begin(), p.inliers.end());
    }

    DetectConfig cfg;
    cfg.distance_threshold = 0.12;  // covers the 5% displacement ball
    cfg.min_inliers = 150;
    cfg.rng_seed = 3;
    const std::vector<Plane> planes = detect_planes(cloud, std::nullopt, cfg);

    REQUIRE(planes.size() == 4);
    std::set<int> found;
    for (const Plane& p : planes) {
        for (int k = 0; k < 4; ++k) {
            if (relative_angle(p.normal, scene.rects[k].normal) < 0.05) found.insert(k);
        }
    }
    CHECK(found.size() == 4);
}

TEST_CASE("detect_planes invariants: disjoint inliers within the band") {
    const std::vector<Vec3> cloud = two_plane_cloud();
    DetectConfig cfg;
    cfg.min_inliers = 400;
    cfg.rng_seed = 77;
    const std::vector<Plane> planes = detect_planes(cloud, std::nullopt, cfg);

    REQUIRE(!planes.empty());
    std::set<std::array<long, 3>> seen;
    for (const Plane& p : planes) {
        for (const Vec3& q : p.inliers) {
            CHECK(p.distance_to(q) <= cfg.distance_threshold);
            const std::array<long, 3> key{static_cast<long>(q.x() * 1e7),
                                          static_cast<long>(q.y() * 1e7),
                                          static_cast<long>(q.z() * 1e7)};
            CHECK(seen.insert(key).second);  // no point claimed twice
        }
    }
    // decreasing inlier-count order
    for (size_t i = 1; i < planes.size(); ++i) {
        CHECK(planes[i - 1].inliers.size() >= planes[i].inliers.size());
    }
}

TEST_CASE("detect_planes is deterministic for a fixed seed") {
    const std::vector<Vec3> cloud = two_plane_cloud();
    DetectConfig cfg;
    cfg.min_inliers = 500;
    cfg.rng_seed = 1234;
    const std::vector<Plane> a = detect_planes(cloud, std::nullopt, cfg);
    const std::vector<Plane> b = detect_planes(cloud, std::nullopt, cfg);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].offset == b[i].offset);
        CHECK((a[i].normal.vec() - b[i].normal.vec()).norm() == 0.0);
        CHECK(a[i].inliers.size() == b[i].inliers.size());
    }
}

TEST_CASE("detect_planes full recall on noiseless rooms over many seeds") {
    const ToyScene scene = make_toy_scene();
    std::vector<Vec3> cloud;
    for (const Plane& p : scene.planes) {
        cloud.insert(cloud.end(), p.inliers.begin(), p.inliers.end());
    }
    int recalled = 0;
    for (int seed = 0; seed < 100; ++seed) {
        DetectConfig cfg;
        cfg.min_inliers = 300;
        cfg.rng_seed = static_cast<std::uint64_t>(seed);
        const std::vector<Plane> planes = detect_planes(cloud, std::nullopt, cfg);
        std::set<int> found;
        for (const Plane& p : planes) {
            for (int k = 0; k < 4; ++k) {
                if (relative_angle(p.normal, scene.rects[k].normal) < 1e-6 &&
                    std::abs(std::abs(p.offset) - std::abs(scene.rects[k].offset)) < 1e-6) {
                    found.insert(k);
                }
            }
        }
        if (found.size() == 4) ++recalled;
    }
    CHECK(recalled == 100);
}

TEST_CASE("detect_planes carries colors onto plane inliers") {
    std::vector<Vec3> cloud;
    std::vector<Rgb> colors;
    for (int i = 0; i < 40; ++i) {
        for (int j = 0; j < 40; ++j) {
            cloud.emplace_back(i * 0.05, 0.0, j * 0.05);
            colors.push_back(Rgb{200, 30, 40});
        }
    }
    DetectConfig cfg;
    cfg.min_inliers = 100;
    const std::vector<Plane> planes = detect_planes(cloud, colors, cfg);
    REQUIRE(planes.size() == 1);
    REQUIRE(planes[0].colors.has_value());
    CHECK(planes[0].colors->size() == planes[0].inliers.size());
    CHECK((*planes[0].colors)[0] == Rgb{200, 30, 40});
}
