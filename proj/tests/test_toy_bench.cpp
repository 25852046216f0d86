#include <doctest.h>

#include <planereg/classification.hpp>
#include <planereg/toy_bench.hpp>

#include <algorithm>
#include <cmath>

using namespace planereg;

namespace {
const UnitVec3 kUp(Vec3(0, 1, 0));
}

TEST_CASE("toy scene construction") {
    const ToyScene scene = make_toy_scene();

    CHECK(std::abs(scene.planes[0].normal.dot(scene.planes[1].normal)) < 1e-12);
    // floor-to-ceiling gap along Up
    const double floor_y = scene.planes[2].centroid.y();
    const double ceil_y = scene.planes[3].centroid.y();
    CHECK(std::abs((ceil_y - floor_y) - 2.5) < 1e-12);

    const auto walls = classify_pair(scene.planes[0], scene.planes[1], kUp);
    CHECK(walls.cls == PairClass::VerticalNonParallel);
    const auto horiz = classify_pair(scene.planes[2], scene.planes[3], kUp);
    CHECK(horiz.cls == PairClass::Horizontal);

    for (const Plane& p : scene.planes) {
        CHECK(p.inliers.size() == 400);
        CHECK(std::abs(p.normal.dot(p.centroid) - p.offset) < kFitTolerance);
    }
}

TEST_CASE("random_motion determinism and bounds") {
    Rng a(99), b(99);
    const RigidMotion ma = random_motion(a);
    const RigidMotion mb = random_motion(b);
    CHECK((ma.rotation - mb.rotation).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ma.translation - mb.translation).norm() == 0.0);

    Rng rng(123);
    for (int i = 0; i < 2000; ++i) {
        const auto [rot, trans] = magnitude(random_motion(rng));
        CHECK(rot <= kPi + 1e-12);
        CHECK(trans <= std::sqrt(3.0) + 1e-12);
    }
}

TEST_CASE("random_motion yaw is uniform (Kolmogorov-Smirnov)") {
    Rng rng(7);
    std::vector<double> yaws;
    yaws.reserve(10000);
    for (int i = 0; i < 10000; ++i) {
        const RigidMotion m = random_motion(rng);
        // signed yaw about +Y recovered from the rotation matrix
        yaws.push_back(std::atan2(m.rotation(0, 2), m.rotation(0, 0)));
    }
    std::sort(yaws.begin(), yaws.end());
    double ks = 0.0;
    const double n = static_cast<double>(yaws.size());
    for (std::size_t i = 0; i < yaws.size(); ++i) {
        const double cdf = (yaws[i] + kPi) / (2.0 * kPi);
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i + 1) / n));
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
    }
    CHECK(ks < 0.02);
}

TEST_CASE("perturb_plane at level zero reproduces the plane") {
    const ToyScene scene = make_toy_scene();
    Rng rng(5);
    NoiseConfig noise;  // level 0
    for (int i = 0; i < 4; ++i) {
        const Plane p = perturb_plane(scene.rects[i], noise, rng);
        CHECK(relative_angle(p.normal, scene.rects[i].normal) < 1e-9);
        const double s = p.normal.dot(scene.rects[i].normal) >= 0 ? 1.0 : -1.0;
        CHECK(std::abs(s * p.offset - scene.rects[i].offset) < 1e-9);
        CHECK(p.inliers.size() == 400);
    }
}

TEST_CASE("perturb_plane at full noise still yields a unit normal") {
    const ToyScene scene = make_toy_scene();
    Rng rng(6);
    NoiseConfig noise;
    noise.level = 100.0;
    for (int rep = 0; rep < 10; ++rep) {
        const Plane p = perturb_plane(scene.rects[rep % 4], noise, rng);
        CHECK(std::abs(p.normal.vec().norm() - 1.0) < 1e-9);
        CHECK(std::isfinite(p.offset));
    }
}

TEST_CASE("noise calibration scales with the level") {
    const NoiseCalibration c10 = calibrate_noise(10.0, 42, 50);
    const NoiseCalibration c30 = calibrate_noise(30.0, 42, 50);
    CHECK(c10.normal_dev_mean > 0.0);
    CHECK(c10.normal_dev_mean < 0.05);
    CHECK(c30.normal_dev_mean > c10.normal_dev_mean);
    CHECK(c30.offset_err_mean > c10.offset_err_mean);
    // sample-to-plane mean distance tracks 3r/8 for ball noise
    const double r10 = 0.1 * 2.0;
    CHECK(std::abs(c10.point_dist_mean - 3.0 * r10 / 8.0) < 0.01);
}

TEST_CASE("run_benchmark at level zero is exact") {
    const std::vector<BenchmarkRow> rows = run_benchmark({0.0}, 200, 77);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].success_pct == 100.0);
    CHECK(rows[0].validity_pct == 100.0);
    CHECK(rows[0].rot_error_mean < 1e-9);
    CHECK(rows[0].trans_error_mean < 1e-9);
}

TEST_CASE("run_benchmark is reproducible and thread-count independent") {
    const std::vector<double> levels{0.0, 20.0};
    const auto a = run_benchmark(levels, 60, 123, 1);
    const auto b = run_benchmark(levels, 60, 123, 1);
    const auto c = run_benchmark(levels, 60, 123, 2);
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == c.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].rot_error_mean == b[i].rot_error_mean);
        CHECK(a[i].trans_error_mean == b[i].trans_error_mean);
        CHECK(a[i].success_pct == b[i].success_pct);
        CHECK(a[i].validity_pct == b[i].validity_pct);
        CHECK(a[i].rot_error_mean == c[i].rot_error_mean);
        CHECK(a[i].trans_error_mean == c[i].trans_error_mean);
        CHECK(a[i].success_pct == c[i].success_pct);
    }
}
