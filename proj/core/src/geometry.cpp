#include "planereg/geometry.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <cassert>
#include <cmath>

namespace planereg {

UnitVec3::UnitVec3(const Vec3& v) {
    const double n = v.norm();
    if (!(n > 1e-12) || !std::isfinite(n)) {
        throw DegenerateInput("cannot normalize near-zero vector");
    }
    v_ = v / n;
}

UnitVec3 UnitVec3::from_unit(const Vec3& v) {
    assert(std::abs(v.norm() - 1.0) < 1e-9);
    UnitVec3 u;
    u.v_ = v;
    return u;
}

RigidMotion RigidMotion::rotation_about(const UnitVec3& axis, double angle) {
    RigidMotion m;
    m.rotation = Eigen::AngleAxisd(angle, axis.vec()).toRotationMatrix();
    return m;
}

RigidMotion compose(const RigidMotion& a, const RigidMotion& b) {
    RigidMotion out;
    out.rotation = a.rotation * b.rotation;
    out.translation = a.rotation * b.translation + a.translation;
    return out;
}

RigidMotion invert(const RigidMotion& m) {
    RigidMotion out;
    out.rotation = m.rotation.transpose();
    out.translation = -(out.rotation * m.translation);
    return out;
}

std::pair<double, double> magnitude(const RigidMotion& m) {
    // rotation angle acos((trace - 1)/2), evaluated through the quaternion
    // so near-identity rotations do not hit the acos conditioning floor
    const Eigen::Quaterniond q(m.rotation);
    const double angle = 2.0 * std::atan2(q.vec().norm(), std::abs(q.w()));
    return {angle, m.translation.norm()};
}

WorldFrame make_world_frame(const UnitVec3& up) {
    // canonical axis least aligned with up, ties broken by lowest index
    int best = 0;
    double best_abs = std::abs(up.x());
    if (std::abs(up.y()) < best_abs) { best = 1; best_abs = std::abs(up.y()); }
    if (std::abs(up.z()) < best_abs) { best = 2; }
    Vec3 e = Vec3::Zero();
    e[best] = 1.0;

    const UnitVec3 z_w(up.vec().cross(e));
    const UnitVec3 x_w = UnitVec3::from_unit(up.vec().cross(z_w.vec()));
    return WorldFrame{x_w, up, z_w};
}

double canonical_sign(const UnitVec3& normal, const Vec3& centroid) {
    const double d = normal.dot(-centroid);
    if (std::abs(d) > 1e-12) return d >= 0.0 ? 1.0 : -1.0;
    // plane passes through the origin: orient the dominant component positive
    int k = 0;
    const Vec3& n = normal.vec();
    if (std::abs(n.y()) > std::abs(n[k])) k = 1;
    if (std::abs(n.z()) > std::abs(n[k])) k = 2;
    return n[k] >= 0.0 ? 1.0 : -1.0;
}

Plane fit_plane(const std::vector<Vec3>& points) {
    return fit_plane(points, std::nullopt);
}

Plane fit_plane(const std::vector<Vec3>& points, std::optional<std::vector<Rgb>> colors) {
    if (points.size() < 3) {
        throw DegenerateInput("fit_plane needs at least 3 points");
    }

    Vec3 centroid = Vec3::Zero();
    for (const Vec3& p : points) centroid += p;
    centroid /= static_cast<double>(points.size());

    Mat3 cov = Mat3::Zero();
    for (const Vec3& p : points) {
        const Vec3 q = p - centroid;
        cov += q * q.transpose();
    }

    Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
    // singular values of the centered point matrix, ascending
    const Vec3 sv = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    if (sv[1] - sv[0] <= 1e-9 * std::max(sv[2], 1e-12)) {
        throw DegenerateInput("fit_plane: points are collinear (normal direction ambiguous)");
    }

    UnitVec3 normal(eig.eigenvectors().col(0));
    const double s = canonical_sign(normal, centroid);
    if (s < 0) normal = normal.negated();

    Plane plane;
    plane.normal = normal;
    plane.centroid = centroid;
    plane.offset = normal.dot(centroid);
    plane.inliers = points;
    plane.colors = std::move(colors);
    return plane;
}

Plane transform_plane(const RigidMotion& motion, const Plane& plane) {
    Plane out;
    UnitVec3 n = UnitVec3::from_unit((motion.rotation * plane.normal.vec()).normalized());
    double d = plane.offset + n.dot(motion.translation);

    out.centroid = motion.apply(plane.centroid);
    out.inliers.reserve(plane.inliers.size());
    for (const Vec3& p : plane.inliers) out.inliers.push_back(motion.apply(p));
    out.colors = plane.colors;

    const double s = canonical_sign(n, out.centroid);
    if (s < 0) {
        n = n.negated();
        d = -d;
    }
    out.normal = n;
    out.offset = d;
    return out;
}

}  // namespace planereg
