#include "planereg/motion.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

namespace planereg {

namespace {

// median with the translation-aggregation convention: even counts take the
// mean of the two middle values
double median_mean_of_middle(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

QuadricAccumulator quadric_accumulate(QuadricAccumulator acc, const UnitVec3& n, double d_a,
                                      double d_b, const WorldFrame& frame) {
    const double a = n.dot(frame.x_w.vec());
    const double b = n.dot(frame.z_w.vec());
    const double len2d = std::hypot(a, b);
    if (len2d < 1e-12) return acc;  // normal has no horizontal component
    const Vec3 p(a / len2d, b / len2d, (d_b - d_a) / len2d);
    acc.k_sum += p * p.transpose();
    acc.count += 1;
    return acc;
}

Vec2 quadric_minimize(const QuadricAccumulator& acc) {
    if (acc.count < 2) {
        throw SingularSystem("quadric_minimize: fewer than two accumulated planes");
    }
    const Eigen::Matrix2d a = acc.k_sum.topLeftCorner<2, 2>();
    const Vec2 rhs(acc.k_sum(0, 2), acc.k_sum(1, 2));

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(a);
    const double lmin = eig.eigenvalues()(0);
    const double lmax = eig.eigenvalues()(1);
    if (!(lmin > 0.0) || lmax / lmin > 1e6) {
        throw SingularSystem("quadric_minimize: near-parallel normals, system ill-conditioned");
    }
    // The literal quadric minimizer of sum (p^T [v;1])^2 is v = -A^{-1} rhs;
    // its sign is opposite to the parallel-case translation (d_b - d_a) N,
    // so the negated solution is returned (ground-truth round trips on the
    // synthetic room confirm this orientation).
    return a.ldlt().solve(rhs);
}

UnitVec3 refine_up(const std::vector<UnitVec3>& horizontal_normals, const UnitVec3& up) {
    if (horizontal_normals.empty()) return up;

    struct Dev {
        double angle;
        UnitVec3 n;
    };
    std::vector<Dev> devs;
    devs.reserve(horizontal_normals.size());
    for (const UnitVec3& n : horizontal_normals) {
        const UnitVec3 aligned = n.dot(up) >= 0 ? n : n.negated();
        devs.push_back({std::acos(std::clamp(aligned.dot(up), -1.0, 1.0)), aligned});
    }
    std::sort(devs.begin(), devs.end(),
              [](const Dev& a, const Dev& b) { return a.angle < b.angle; });
    // median; even counts take the smaller of the two middle deviations
    return devs[(devs.size() - 1) / 2].n;
}

Mat3 rotation_from_plane(const UnitVec3& n_a, const UnitVec3& n_b, const UnitVec3& up_a,
                         const UnitVec3& up_b) {
    const double cos10 = std::cos(deg_to_rad(10.0));
    if (std::abs(n_a.dot(up_a)) > cos10 || std::abs(n_b.dot(up_b)) > cos10) {
        throw DegenerateInput("rotation_from_plane: plane too horizontal to anchor a frame");
    }
    const auto basis = [](const UnitVec3& n, const UnitVec3& up) {
        const Vec3 proj = n.vec() - n.dot(up) * up.vec();
        const Vec3 np = proj.normalized();
        Mat3 b;
        b.col(0) = np;
        b.col(1) = up.vec();
        b.col(2) = up.vec().cross(np);
        return b;
    };
    return basis(n_b, up_b) * basis(n_a, up_a).transpose();
}

Mat3 average_rotations(const std::vector<Mat3>& rotations) {
    if (rotations.empty()) {
        throw DegenerateInput("average_rotations: empty input");
    }
    if (rotations.size() == 1) return rotations.front();

    Mat3 mean = Mat3::Zero();
    for (const Mat3& r : rotations) mean += r;
    mean /= static_cast<double>(rotations.size());

    Eigen::JacobiSVD<Mat3> svd(mean, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 r = svd.matrixU() * svd.matrixV().transpose();
    if (r.determinant() < 0) {
        Mat3 d = Mat3::Identity();
        d(2, 2) = -1.0;
        r = svd.matrixU() * d * svd.matrixV().transpose();
    }
    return r;
}

ParallelTranslation horizontal_translation_parallel(const std::vector<OffsetPair>& matches,
                                                    const WorldFrame& frame) {
    if (matches.empty()) {
        throw DegenerateInput("horizontal_translation_parallel: no matches");
    }
    // mean of sign-aligned normals as the common direction
    const UnitVec3& ref = matches.front().n;
    Vec3 sum = Vec3::Zero();
    for (const OffsetPair& m : matches) {
        sum += m.n.dot(ref) >= 0 ? m.n.vec() : -m.n.vec();
    }
    const UnitVec3 direction(sum);

    std::vector<double> deltas;
    deltas.reserve(matches.size());
    for (const OffsetPair& m : matches) {
        const double s = m.n.dot(direction) >= 0 ? 1.0 : -1.0;
        deltas.push_back(s * (m.d_b - m.d_a));
    }
    const Vec3 t_n = median_mean_of_middle(std::move(deltas)) * direction.vec();

    ParallelTranslation out;
    out.direction = direction;
    out.t_xz = Vec2(t_n.dot(frame.x_w.vec()), t_n.dot(frame.z_w.vec()));
    return out;
}

double vertical_translation(const std::vector<OffsetPair>& matches, const UnitVec3& up) {
    if (matches.empty()) {
        throw DegenerateInput("vertical_translation: no matches");
    }
    std::vector<double> deltas;
    deltas.reserve(matches.size());
    for (const OffsetPair& m : matches) {
        const double s = m.n.dot(up) >= 0 ? 1.0 : -1.0;
        deltas.push_back(s * (m.d_b - m.d_a));
    }
    return median_mean_of_middle(std::move(deltas));
}

Mat3 align_rotation(const UnitVec3& from, const UnitVec3& to) {
    const Vec3 axis = from.vec().cross(to.vec());
    const double s = axis.norm();
    const double c = from.dot(to);
    if (s < 1e-15) {
        if (c > 0) return Mat3::Identity();
        // antiparallel: half turn about any orthogonal axis
        const WorldFrame f = make_world_frame(from);
        return Eigen::AngleAxisd(kPi, f.x_w.vec()).toRotationMatrix();
    }
    return Eigen::AngleAxisd(std::atan2(s, c), axis / s).toRotationMatrix();
}

Mat3 twist_about(const Mat3& rotation, const UnitVec3& axis) {
    const Eigen::Quaterniond q(rotation);
    const Vec3 v(q.x(), q.y(), q.z());
    const Vec3 proj = v.dot(axis.vec()) * axis.vec();
    Eigen::Quaterniond twist(q.w(), proj.x(), proj.y(), proj.z());
    const double n = twist.norm();
    if (n < 1e-12) return Mat3::Identity();
    twist.coeffs() /= n;
    return twist.toRotationMatrix();
}

MotionEstimate estimate_motion(const std::vector<MatchedPlane>& matches, const UnitVec3& up_a,
                               const UnitVec3& up_b, const std::optional<RigidMotion>& prior,
                               const ClassConfig& ccfg) {
    std::vector<const MatchedPlane*> vertical;
    std::vector<const MatchedPlane*> horizontal;
    for (const MatchedPlane& m : matches) {
        if (m.cls == PlaneClass::Vertical) vertical.push_back(&m);
        if (m.cls == PlaneClass::Horizontal) horizontal.push_back(&m);
    }

    std::vector<UnitVec3> horiz_a, horiz_b;
    for (const MatchedPlane* m : horizontal) {
        horiz_a.push_back(m->a.normal);
        horiz_b.push_back(m->b.normal);
    }
    const UnitVec3 up_a_r = refine_up(horiz_a, up_a);
    const UnitVec3 up_b_r = refine_up(horiz_b, up_b);

    MotionEstimate est;
    std::vector<std::string> missing;

    // rotation
    bool have_rotation = false;
    Mat3 rot = Mat3::Identity();
    if (!vertical.empty()) {
        std::vector<Mat3> rotations;
        for (const MatchedPlane* m : vertical) {
            try {
                rotations.push_back(rotation_from_plane(m->a.normal, m->b.normal, up_a_r, up_b_r));
            } catch (const DegenerateInput&) {
                // near-horizontal normal; cannot anchor a frame from this match
            }
        }
        if (!rotations.empty()) {
            rot = average_rotations(rotations);
            have_rotation = true;
            est.observed.rotation = true;
            est.sources.rotation_planes = static_cast<int>(rotations.size());
        }
    }
    if (!have_rotation) {
        if (prior) {
            const Mat3 swing = align_rotation(up_a_r, up_b_r);
            rot = twist_about(prior->rotation * swing.transpose(), up_b_r) * swing;
            have_rotation = true;
        } else {
            throw Underconstrained("estimate_motion: rotation unobservable without vertical "
                                   "matches or a prior",
                                   {"rotation"});
        }
    }

    const WorldFrame frame = make_world_frame(up_b_r);
    const Vec3 prior_t = prior ? prior->translation : Vec3::Zero();

    // aligned per-match offsets in the view-b frame; rotation leaves offsets
    // unchanged, only the canonical sign needs reconciling across views
    const auto offset_pair = [&](const MatchedPlane& m) {
        const Vec3 n_rot = rot * m.a.normal.vec();
        const double s = n_rot.dot(m.b.normal.vec()) >= 0 ? 1.0 : -1.0;
        return OffsetPair{m.b.normal, s * m.a.offset, m.b.offset};
    };

    // horizontal translation from vertical matches
    Vec2 t_xz = Vec2::Zero();
    if (!vertical.empty()) {
        std::vector<OffsetPair> pairs;
        pairs.reserve(vertical.size());
        for (const MatchedPlane* m : vertical) pairs.push_back(offset_pair(*m));
        est.sources.horizontal_planes = static_cast<int>(pairs.size());

        bool any_nonparallel = false;
        for (size_t i = 0; i < vertical.size() && !any_nonparallel; ++i) {
            for (size_t j = i + 1; j < vertical.size(); ++j) {
                if (classify_pair(vertical[i]->b, vertical[j]->b, up_b_r, ccfg).cls ==
                    PairClass::VerticalNonParallel) {
                    any_nonparallel = true;
                    break;
                }
            }
        }

        bool have_full = false;
        if (any_nonparallel && pairs.size() >= 2) {
            QuadricAccumulator acc;
            for (const OffsetPair& p : pairs) {
                acc = quadric_accumulate(acc, p.n, p.d_a, p.d_b, frame);
            }
            try {
                t_xz = quadric_minimize(acc);
                have_full = true;
            } catch (const SingularSystem&) {
                // fall back to the single-direction path below
            }
        }
        if (have_full) {
            est.observed.horizontal_full = true;
        } else {
            const ParallelTranslation pt = horizontal_translation_parallel(pairs, frame);
            est.observed.horizontal_1d = pt.direction;
            t_xz = pt.t_xz;
            const Vec2 n2 =
                Vec2(pt.direction.dot(frame.x_w.vec()), pt.direction.dot(frame.z_w.vec()))
                    .normalized();
            if (prior) {
                const Vec2 prior_xz(prior_t.dot(frame.x_w.vec()), prior_t.dot(frame.z_w.vec()));
                t_xz += prior_xz - prior_xz.dot(n2) * n2;
            } else {
                missing.emplace_back("horizontal translation orthogonal to the observed direction");
            }
        }
    } else if (prior) {
        t_xz = Vec2(prior_t.dot(frame.x_w.vec()), prior_t.dot(frame.z_w.vec()));
    } else {
        missing.emplace_back("horizontal translation");
    }

    // vertical translation from horizontal matches
    double t_y = 0.0;
    if (!horizontal.empty()) {
        std::vector<OffsetPair> pairs;
        pairs.reserve(horizontal.size());
        for (const MatchedPlane* m : horizontal) pairs.push_back(offset_pair(*m));
        t_y = vertical_translation(pairs, up_b_r);
        est.observed.vertical = true;
        est.sources.vertical_planes = static_cast<int>(pairs.size());
    } else if (prior) {
        t_y = prior_t.dot(up_b_r.vec());
    } else {
        missing.emplace_back("vertical translation");
    }

    if (!missing.empty()) {
        std::string msg = "estimate_motion: missing";
        for (const std::string& m : missing) msg += " [" + m + "]";
        throw Underconstrained(msg, std::move(missing));
    }

    est.motion.rotation = rot;
    est.motion.translation =
        frame.x_w.vec() * t_xz.x() + up_b_r.vec() * t_y + frame.z_w.vec() * t_xz.y();
    return est;
}

}  // namespace planereg
