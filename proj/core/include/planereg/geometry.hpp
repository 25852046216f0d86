#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "planereg/errors.hpp"

namespace planereg {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Rgb = std::array<std::uint8_t, 3>;

/// Unit-norm direction. Construction normalizes; throws DegenerateInput on a
/// near-zero vector.
class UnitVec3 {
public:
    UnitVec3() : v_(1, 0, 0) {}
    explicit UnitVec3(const Vec3& v);

    /// Wraps a vector that is already unit-norm (asserted in debug builds).
    static UnitVec3 from_unit(const Vec3& v);

    const Vec3& vec() const { return v_; }
    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    double z() const { return v_.z(); }

    double dot(const UnitVec3& o) const { return v_.dot(o.v_); }
    double dot(const Vec3& o) const { return v_.dot(o); }
    UnitVec3 negated() const { return from_unit(-v_); }

private:
    Vec3 v_;
};

/// Rigid motion p -> R p + t. Rotation is orthonormal with det +1.
struct RigidMotion {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    static RigidMotion identity() { return {}; }
    /// Rotation of `angle` radians about `axis`, zero translation.
    static RigidMotion rotation_about(const UnitVec3& axis, double angle);

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
};

/// Applies b then a.
RigidMotion compose(const RigidMotion& a, const RigidMotion& b);
RigidMotion invert(const RigidMotion& m);
/// (rotation angle in radians, translation norm in meters).
std::pair<double, double> magnitude(const RigidMotion& m);

/// Detected planar region: unit normal, signed offset d = N.P for surface
/// points P, the supporting inliers and their centroid, optional per-inlier
/// colors. The normal is canonically oriented toward the view's sensor
/// origin (the coordinate origin): normal . (origin - centroid) >= 0.
struct Plane {
    UnitVec3 normal;
    double offset = 0.0;
    std::vector<Vec3> inliers;
    Vec3 centroid = Vec3::Zero();
    std::optional<std::vector<Rgb>> colors;

    double distance_to(const Vec3& p) const { return std::abs(normal.dot(p) - offset); }
};

/// Shared plane-fit / detection distance tolerance (2 cm).
inline constexpr double kFitTolerance = 0.02;

/// Right-handed orthonormal frame with y_w = Up.
struct WorldFrame {
    UnitVec3 x_w, y_w, z_w;
};

/// Completes Up into a right-handed frame. Deterministic: picks the
/// canonical axis least aligned with Up (lowest index on ties), sets
/// z_w = normalize(up x e) and x_w = y_w x z_w.
WorldFrame make_world_frame(const UnitVec3& up);

/// Least-squares plane through >= 3 non-collinear points: centroid mean,
/// normal = direction of least variance, offset = normal . centroid,
/// normal canonicalized toward the origin. Throws DegenerateInput when the
/// two smallest singular values coincide (collinear input).
Plane fit_plane(const std::vector<Vec3>& points);
Plane fit_plane(const std::vector<Vec3>& points, std::optional<std::vector<Rgb>> colors);

/// Maps a plane through a rigid motion: normal' = R normal,
/// offset' = offset + normal'.t, inliers and centroid mapped pointwise,
/// normal re-canonicalized toward the destination origin.
Plane transform_plane(const RigidMotion& motion, const Plane& plane);

/// Canonical normal sign for a plane at `centroid` seen from the origin.
/// Returns +1 to keep the normal, -1 to flip it. Near-zero dot products are
/// tie-broken by making the largest-magnitude normal component positive.
double canonical_sign(const UnitVec3& normal, const Vec3& centroid);

}  // namespace planereg
