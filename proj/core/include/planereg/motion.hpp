#pragma once

#include <optional>
#include <vector>

#include "planereg/classification.hpp"
#include "planereg/geometry.hpp"

namespace planereg {

using Vec2 = Eigen::Vector2d;

/// One matched plane across two views, carrying the per-view parameters the
/// motion solver needs. Offsets in view a must already reflect any rotation
/// applied upstream (rotation does not change offsets, so detected values
/// can be passed directly).
struct MatchedPlane {
    Plane a;
    Plane b;
    PlaneClass cls = PlaneClass::Unclassified;
};

/// Sum of rank-1 fundamental error quadrics p p^T in homogeneous 2D
/// horizontal space. Symmetric positive semidefinite by construction.
struct QuadricAccumulator {
    Mat3 k_sum = Mat3::Zero();
    int count = 0;
};

/// Adds one vertical plane's quadric: p = [N.X_w, N.Z_w, d_b - d_a] with the
/// 2D normal part renormalized to unit length (the third component rescaled
/// by the same factor) so tilted planes are not down-weighted.
QuadricAccumulator quadric_accumulate(QuadricAccumulator acc, const UnitVec3& n, double d_a,
                                      double d_b, const WorldFrame& frame);

/// Horizontal translation (X_w, Z_w components) minimizing the summed
/// squared plane residuals. Requires >= 2 accumulated planes with
/// non-parallel directions; throws SingularSystem when the 2x2 system's
/// condition number exceeds 1e6, in which case callers fall back to
/// horizontal_translation_parallel. The sign convention matches the
/// parallel case: a plane moving from d_a to d_b pushes the solution along
/// +N by (d_b - d_a).
Vec2 quadric_minimize(const QuadricAccumulator& acc);

/// Offsets of one matched plane along a shared direction.
struct OffsetPair {
    UnitVec3 n;   // direction the offsets are measured along (view-b frame)
    double d_a = 0.0;
    double d_b = 0.0;
};

/// Median Up-deviation selection over matched horizontal planes; the plane
/// normals are sign-aligned to the current Up first. Empty input returns
/// `up` unchanged. Even counts select the smaller of the two middle
/// deviations.
UnitVec3 refine_up(const std::vector<UnitVec3>& horizontal_normals, const UnitVec3& up);

/// Rotation mapping (n_a, up_a) onto (n_b, up_b) from the plane-anchored
/// frames (N Up UpxN); normals are projected orthogonal to their Up first.
/// Throws DegenerateInput when a normal is within 10 degrees of Up.
Mat3 rotation_from_plane(const UnitVec3& n_a, const UnitVec3& n_b, const UnitVec3& up_a,
                         const UnitVec3& up_b);

/// Chordal mean: special-orthogonal projection of the entrywise mean.
Mat3 average_rotations(const std::vector<Mat3>& rotations);

struct ParallelTranslation {
    Vec2 t_xz = Vec2::Zero();   // (X_w, Z_w) components
    UnitVec3 direction;         // common normal direction in the view-b frame
};

/// 1D horizontal translation when all matched vertical planes share a
/// direction: median offset difference applied along the mean direction.
ParallelTranslation horizontal_translation_parallel(const std::vector<OffsetPair>& matches,
                                                    const WorldFrame& frame);

/// Median offset difference along Up over matched horizontal planes.
double vertical_translation(const std::vector<OffsetPair>& matches, const UnitVec3& up);

struct DofFlags {
    bool rotation = false;
    bool horizontal_full = false;
    std::optional<UnitVec3> horizontal_1d;  // observed direction when only 1D
    bool vertical = false;
};

struct DofSources {
    int rotation_planes = 0;
    int horizontal_planes = 0;
    int vertical_planes = 0;
};

struct MotionEstimate {
    RigidMotion motion;
    DofFlags observed;
    DofSources sources;
};

/// Full DoF-split motion solve: refine Up per view from the horizontal
/// matches, rotation from vertical matches (Eq.-style plane frames,
/// averaged), horizontal translation from vertical matches (quadric or
/// parallel path), vertical translation from horizontal matches, prior
/// fill-in for anything unobserved. The result maps view-a coordinates
/// into view-b coordinates. Throws Underconstrained when a needed
/// component has neither evidence nor prior.
MotionEstimate estimate_motion(const std::vector<MatchedPlane>& matches, const UnitVec3& up_a,
                               const UnitVec3& up_b,
                               const std::optional<RigidMotion>& prior = std::nullopt,
                               const ClassConfig& ccfg = {});

/// Minimal rotation taking `from` onto `to` (identity when parallel).
Mat3 align_rotation(const UnitVec3& from, const UnitVec3& to);

/// Twist component of `rotation` about `axis` (the swing factor is
/// discarded). Returns the twist as a rotation matrix.
Mat3 twist_about(const Mat3& rotation, const UnitVec3& axis);

}  // namespace planereg
