#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "planereg/geometry.hpp"
#include "planereg/matching.hpp"
#include "planereg/rng.hpp"

namespace planereg {

/// Bounded rectangular plane patch: center plus two orthogonal in-plane
/// half-extent vectors.
struct Rect {
    Vec3 center = Vec3::Zero();
    Vec3 half_u = Vec3::Zero();
    Vec3 half_v = Vec3::Zero();
    UnitVec3 normal;
    double offset = 0.0;  // canonical offset of the exact plane
};

Rect transform_rect(const RigidMotion& motion, const Rect& rect);

/// Synthetic room: two orthogonal vertical walls, floor and ceiling.
struct ToyScene {
    std::array<Plane, 4> planes;  // left wall, far wall, floor, ceiling
    std::array<Rect, 4> rects;
    double width = 4.0;
    double depth = 4.0;
    double height = 2.5;
};

/// Deterministic scene: left wall x = -2 (4 x 2.5 m), far wall z = -2
/// (4 x 2.5 m), floor y = 0 and ceiling y = 2.5 (4 x 4 m each). Plane
/// inliers are a regular 20 x 20 grid on each rectangle.
ToyScene make_toy_scene();

struct NoiseConfig {
    double level = 0.0;             // percent of max_displacement, [0, 100]
    double max_displacement = 2.0;  // meters
    std::size_t samples_per_plane = 400;
    std::uint64_t rng_seed = 0;
};

/// Random sensor motion: rotation of a uniform angle in [-pi, pi) about the
/// +Y Up axis, translation uniform per axis in [-1, 1] m.
RigidMotion random_motion(Rng& rng);

/// Samples the rectangle uniformly, displaces every sample by an independent
/// uniform vector in the ball of radius (level/100) * max_displacement, and
/// refits the plane on the noisy points.
Plane perturb_plane(const Rect& rect, const NoiseConfig& noise, Rng& rng);

struct TrialResult {
    bool success = false;
    double rot_error = 0.0;    // radians
    double trans_error = 0.0;  // meters
    bool valid = false;        // success && rot < 20 deg && trans < 0.20 m
};

struct BenchmarkRow {
    double noise_level = 0.0;
    double rot_error_mean = 0.0;
    double rot_error_std = 0.0;
    double trans_error_mean = 0.0;
    double trans_error_std = 0.0;
    double success_pct = 0.0;
    double validity_pct = 0.0;
    std::size_t trials = 0;
};

/// Mean plane-fit errors under the noise model, measured on the toy planes.
/// Feeds the benchmark's noise-scaled validation thresholds and the
/// acceptance checks.
struct NoiseCalibration {
    double normal_dev_mean = 0.0;  // radians
    double offset_err_mean = 0.0;  // meters
    double point_dist_mean = 0.0;  // meters, noisy sample to true plane
};

NoiseCalibration calibrate_noise(double level, std::uint64_t seed, int repetitions = 200);

/// Validation thresholds for the synthetic benchmark. The magnitude gates
/// admit any drawable motion (rotation up to pi; translation gate between
/// the largest per-candidate translation sqrt(2) and the smallest decoy
/// floor-to-ceiling translation 1.5 m), and the noise-sensitive per-match
/// checks scale with the calibrated fit errors. The pair-penalty gates stay
/// at their 10 degree / 10 cm defaults.
ValidationConfig benchmark_validation_config(double level, std::uint64_t seed);

/// One registration trial at the given noise level: both views perturbed
/// independently, view b on the transformed rectangles, matched with no
/// prior and scored against the drawn motion.
TrialResult run_trial(double level, std::uint64_t trial_seed, const ValidationConfig& vcfg);

/// Full sweep; deterministic for a given seed regardless of `threads`
/// (per-trial seed streams, sequential reduction).
std::vector<BenchmarkRow> run_benchmark(const std::vector<double>& levels,
                                        std::size_t trials_per_level, std::uint64_t seed,
                                        unsigned threads = 1);

}  // namespace planereg
