#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "planereg/classification.hpp"
#include "planereg/geometry.hpp"
#include "planereg/motion.hpp"

namespace planereg {

/// Unordered same-category plane pair within one view.
struct PlanePair {
    int first = 0;
    int second = 0;  // first < second
    PairClass category = PairClass::Other;
    double alpha_rel = 0.0;
    double signed_gap = 0.0;  // N_first . (P_first - P_second), centroids for P
};

struct ImpliedMatch {
    int a = 0;
    int b = 0;
};

/// Hypothesis that pair_a in view a and pair_b in view b observe the same
/// two scene planes, with the role assignment recorded in `implied`.
struct PairCandidate {
    PlanePair pair_a;
    PlanePair pair_b;
    double penalty = 0.0;
    std::array<ImpliedMatch, 2> implied{};
};

struct ValidationConfig {
    double angle_penalty_max = deg_to_rad(10.0);  // pair-penalty gate, non-parallel
    double distance_penalty_max = 0.10;           // pair-penalty gate, parallel (m)
    double motion_rot_max = kPi / 2.0;            // candidate-motion magnitude gates
    double motion_trans_max = 5.0;
    double normal_angle_max = deg_to_rad(10.0);   // per-match checks
    double offset_diff_max = 0.10;
    std::size_t inlier_sample = 100;
    double inlier_dist_max = 0.05;
    double hull_overlap_min = 0.3;
    double hist_similarity_min = 0.5;
    int hist_bins_hue = 8;
    int hist_bins_sat = 8;
    std::uint64_t rng_seed = 0;                   // inlier-sampling seed stream
};

enum class RejectReason {
    None,
    DegenerateMotion,
    MagnitudeExceeded,
    NormalAngle,
    OffsetDifference,
    InlierDistance,
    HullOverlap,
    ColorHistogram,
};

struct ValidationResult {
    bool accepted = false;
    RigidMotion motion;
    RejectReason reason = RejectReason::None;
    /// Post-motion mean inlier distance per implied match (conflict key).
    std::array<double, 2> match_inlier_dist{0.0, 0.0};
};

struct Match {
    int a = 0;
    int b = 0;
    PlaneClass cls = PlaneClass::Unclassified;
    double inlier_dist = 0.0;  // post-motion mean inlier distance
};

struct MatchSet {
    std::vector<Match> matches;
    bool empty() const { return matches.empty(); }
};

struct AcceptedCandidate {
    PairCandidate candidate;
    RigidMotion motion;
    std::array<double, 2> match_inlier_dist{0.0, 0.0};
    PlaneClass match_class = PlaneClass::Unclassified;
};

enum class NoMotionReason { None, NoPlanes, NoMatches, InsufficientConstraints };

struct MatchResult {
    MatchSet matches;
    std::optional<MotionEstimate> motion;
    NoMotionReason reason = NoMotionReason::None;
};

/// All unordered same-class pairs of classified planes, tagged by
/// classify_pair; Other-category pairs are dropped.
std::vector<PlanePair> generate_pairs(const std::vector<Plane>& planes,
                                      const std::vector<PlaneClass>& classes, const UnitVec3& up,
                                      const ClassConfig& ccfg = {});

struct PenaltyResult {
    double penalty = 0.0;
    std::array<ImpliedMatch, 2> implied{};
};

/// View-agnostic pair penalty: relative-angle difference for non-parallel
/// pairs, relative-gap difference for parallel and horizontal pairs. Gaps
/// are compared by magnitude, which makes the penalty independent of the
/// canonical normal signs (those can legitimately differ between views for
/// planes near a view's origin). The returned implied matches record the
/// role assignment; both assignments score identically under these
/// penalties, so candidate generation tries both.
PenaltyResult pair_penalty(const PlanePair& pa, const PlanePair& pb,
                           const std::vector<Plane>& planes_a,
                           const std::vector<Plane>& planes_b);

/// Computes the candidate's motion from its two implied matches (rotation +
/// horizontal translation for vertical pairs, Up-alignment + vertical
/// translation for horizontal pairs), gates it by magnitude, then checks
/// each implied match: normal angle, offset difference, sampled inlier
/// distances, convex-hull overlap, and color-histogram similarity when both
/// planes carry colors.
ValidationResult validate_candidate(const PairCandidate& cand, const std::vector<Plane>& view_a,
                                    const std::vector<Plane>& view_b, const UnitVec3& up_a,
                                    const UnitVec3& up_b, const ValidationConfig& vcfg = {});

/// One-to-one match set: when a plane participates in conflicting matches,
/// the match with the smallest post-motion mean inlier distance wins
/// (ties broken by plane indices).
MatchSet resolve_conflicts(const std::vector<AcceptedCandidate>& accepted);

/// Fallback when no pair match was produced: compares same-class planes one
/// by one with a single-plane motion (rotation from the plane frame, or
/// Up-alignment for horizontal planes; translation along the normal only)
/// and the same validation heuristics.
MatchSet match_single_planes(const std::vector<Plane>& planes_a,
                             const std::vector<Plane>& planes_b,
                             const std::vector<PlaneClass>& classes_a,
                             const std::vector<PlaneClass>& classes_b, const UnitVec3& up_a,
                             const UnitVec3& up_b, const ValidationConfig& vcfg = {});

/// Full no-prior matching pipeline: classify, generate pairs, penalty-gate
/// candidates (both role assignments), validate, resolve conflicts, fall
/// back to single planes if needed, then recompute the motion from the
/// final match set. `motion` is empty when no DoF-complete motion exists;
/// `reason` says why.
MatchResult match_views(const std::vector<Plane>& view_a, const std::vector<Plane>& view_b,
                        const UnitVec3& up_a, const UnitVec3& up_b, const ClassConfig& ccfg = {},
                        const ValidationConfig& vcfg = {});

}  // namespace planereg
