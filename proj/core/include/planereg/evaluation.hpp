#pragma once

#include <optional>
#include <vector>

#include "planereg/geometry.hpp"

namespace planereg {

/// Ground-truth point correspondences between two views.
struct CorrespondenceSet {
    std::vector<std::pair<Vec3, Vec3>> pairs;  // (point in view a, point in view b)
};

/// Mean Euclidean distance between motion-transformed view-a points and
/// their view-b correspondents. Throws EmptyCorrespondences.
double correspondence_error(const RigidMotion& motion, const CorrespondenceSet& corr);

inline constexpr double kValidityThreshold = 0.20;  // meters

/// One registration attempt to score.
struct PairOutcome {
    bool registered = false;
    std::optional<double> corr_error;  // set when registered
    double elapsed_ms = 0.0;
};

struct EvalReport {
    double success_pct = 0.0;    // registered / total
    double recall_pct = 0.0;     // valid / total
    double precision_pct = 0.0;  // valid / registered
    bool precision_degenerate = false;  // no registered pairs
    double rmse = 0.0;           // over registered pairs
    double mae = 0.0;            // median over registered pairs
    double mean_time_ms = 0.0;
    std::size_t total = 0;
    std::size_t registered = 0;
    std::size_t valid = 0;
};

EvalReport aggregate(const std::vector<PairOutcome>& results,
                     double validity_threshold = kValidityThreshold);

}  // namespace planereg
