#include "planereg/matching.hpp"

#include <algorithm>
#include <cmath>

#include "planereg/hull.hpp"
#include "planereg/rng.hpp"

namespace planereg {

namespace {

// hue-saturation histogram, L1-normalized
std::vector<double> hs_histogram(const std::vector<Rgb>& colors, int bins_h, int bins_s) {
    std::vector<double> hist(static_cast<size_t>(bins_h) * bins_s, 0.0);
    if (colors.empty()) return hist;
    for (const Rgb& c : colors) {
        const double r = c[0] / 255.0, g = c[1] / 255.0, b = c[2] / 255.0;
        const double mx = std::max({r, g, b});
        const double mn = std::min({r, g, b});
        const double chroma = mx - mn;
        double hue = 0.0;
        if (chroma > 0.0) {
            if (mx == r) hue = std::fmod((g - b) / chroma + 6.0, 6.0);
            else if (mx == g) hue = (b - r) / chroma + 2.0;
            else hue = (r - g) / chroma + 4.0;
            hue /= 6.0;  // [0,1)
        }
        const double sat = mx > 0.0 ? chroma / mx : 0.0;
        const int hb = std::min(bins_h - 1, static_cast<int>(hue * bins_h));
        const int sb = std::min(bins_s - 1, static_cast<int>(sat * bins_s));
        hist[static_cast<size_t>(hb) * bins_s + sb] += 1.0;
    }
    for (double& v : hist) v /= static_cast<double>(colors.size());
    return hist;
}

double histogram_intersection(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::min(a[i], b[i]);
    return s;
}

// mean plane-to-plane distance of a seeded inlier sample
double sampled_mean_distance(const std::vector<Vec3>& inliers, const Plane& target,
                             std::size_t sample, std::uint64_t seed) {
    if (inliers.empty()) return 0.0;
    Rng rng(seed);
    double sum = 0.0;
    std::size_t n = std::min(sample, inliers.size());
    if (inliers.size() <= sample) {
        for (const Vec3& p : inliers) sum += target.distance_to(p);
        n = inliers.size();
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            sum += target.distance_to(inliers[rng.below(inliers.size())]);
        }
    }
    return sum / static_cast<double>(n);
}

// per-match geometric and appearance checks; fills dist_out with the mean of
// the two directed sampled distances
RejectReason check_match(const Plane& a_transformed, const Plane& b, const ValidationConfig& vcfg,
                         std::uint64_t seed, double* dist_out) {
    const double angle = relative_angle(a_transformed.normal, b.normal);
    if (angle > vcfg.normal_angle_max) return RejectReason::NormalAngle;

    const double s = a_transformed.normal.dot(b.normal) >= 0 ? 1.0 : -1.0;
    if (std::abs(a_transformed.offset - s * b.offset) > vcfg.offset_diff_max) {
        return RejectReason::OffsetDifference;
    }

    const double d_ab =
        sampled_mean_distance(a_transformed.inliers, b, vcfg.inlier_sample, mix_seed(seed, 1));
    const double d_ba =
        sampled_mean_distance(b.inliers, a_transformed, vcfg.inlier_sample, mix_seed(seed, 2));
    *dist_out = 0.5 * (d_ab + d_ba);
    if (std::max(d_ab, d_ba) > vcfg.inlier_dist_max) return RejectReason::InlierDistance;

    const PlaneAxes axes = plane_axes(b.normal);
    const double overlap =
        hull_overlap_ratio(project_to_plane(a_transformed.inliers, axes, b.centroid),
                           project_to_plane(b.inliers, axes, b.centroid));
    if (overlap < vcfg.hull_overlap_min) return RejectReason::HullOverlap;

    if (a_transformed.colors && b.colors && !a_transformed.colors->empty() &&
        !b.colors->empty()) {
        const auto ha = hs_histogram(*a_transformed.colors, vcfg.hist_bins_hue, vcfg.hist_bins_sat);
        const auto hb = hs_histogram(*b.colors, vcfg.hist_bins_hue, vcfg.hist_bins_sat);
        if (histogram_intersection(ha, hb) < vcfg.hist_similarity_min) {
            return RejectReason::ColorHistogram;
        }
    }
    return RejectReason::None;
}

std::uint64_t candidate_seed(const ValidationConfig& vcfg, int ia, int ib, int ja, int jb) {
    const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ia)) << 48) ^
                              (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ib)) << 32) ^
                              (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ja)) << 16) ^
                              static_cast<std::uint64_t>(static_cast<std::uint32_t>(jb));
    return mix_seed(vcfg.rng_seed, key);
}

double assignment_penalty(const PlanePair& pa, const PlanePair& pb) {
    if (pa.category == PairClass::VerticalNonParallel) {
        return std::abs(pa.alpha_rel - pb.alpha_rel);
    }
    // gap magnitudes: independent of role order and canonical normal signs
    return std::abs(std::abs(pa.signed_gap) - std::abs(pb.signed_gap));
}

}  // namespace

std::vector<PlanePair> generate_pairs(const std::vector<Plane>& planes,
                                      const std::vector<PlaneClass>& classes, const UnitVec3& up,
                                      const ClassConfig& ccfg) {
    std::vector<PlanePair> pairs;
    const int n = static_cast<int>(planes.size());
    for (int i = 0; i < n; ++i) {
        if (classes[i] == PlaneClass::Unclassified) continue;
        for (int j = i + 1; j < n; ++j) {
            if (classes[j] != classes[i]) continue;
            const PairClassification pc = classify_pair(planes[i], planes[j], up, ccfg);
            if (pc.cls == PairClass::Other) continue;
            PlanePair pair;
            pair.first = i;
            pair.second = j;
            pair.category = pc.cls;
            pair.alpha_rel = pc.alpha_rel;
            pair.signed_gap = planes[i].normal.dot(planes[i].centroid - planes[j].centroid);
            pairs.push_back(pair);
        }
    }
    return pairs;
}

PenaltyResult pair_penalty(const PlanePair& pa, const PlanePair& pb,
                           const std::vector<Plane>& planes_a,
                           const std::vector<Plane>& planes_b) {
    (void)planes_a;
    (void)planes_b;
    PenaltyResult out;
    out.penalty = assignment_penalty(pa, pb);
    out.implied = {ImpliedMatch{pa.first, pb.first}, ImpliedMatch{pa.second, pb.second}};
    return out;
}

ValidationResult validate_candidate(const PairCandidate& cand, const std::vector<Plane>& view_a,
                                    const std::vector<Plane>& view_b, const UnitVec3& up_a,
                                    const UnitVec3& up_b, const ValidationConfig& vcfg) {
    ValidationResult out;
    const Plane* pa[2] = {&view_a[cand.implied[0].a], &view_a[cand.implied[1].a]};
    const Plane* pb[2] = {&view_b[cand.implied[0].b], &view_b[cand.implied[1].b]};

    RigidMotion motion;
    const WorldFrame frame = make_world_frame(up_b);

    if (cand.pair_a.category == PairClass::Horizontal) {
        motion.rotation = align_rotation(up_a, up_b);
        std::vector<OffsetPair> offsets;
        for (int k = 0; k < 2; ++k) {
            const Vec3 n_rot = motion.rotation * pa[k]->normal.vec();
            const double s = n_rot.dot(pb[k]->normal.vec()) >= 0 ? 1.0 : -1.0;
            offsets.push_back({pb[k]->normal, s * pa[k]->offset, pb[k]->offset});
        }
        motion.translation = vertical_translation(offsets, up_b) * up_b.vec();
    } else {
        std::vector<Mat3> rotations;
        for (int k = 0; k < 2; ++k) {
            try {
                rotations.push_back(
                    rotation_from_plane(pa[k]->normal, pb[k]->normal, up_a, up_b));
            } catch (const DegenerateInput&) {
                out.reason = RejectReason::DegenerateMotion;
                return out;
            }
        }
        motion.rotation = average_rotations(rotations);

        std::vector<OffsetPair> offsets;
        for (int k = 0; k < 2; ++k) {
            const Vec3 n_rot = motion.rotation * pa[k]->normal.vec();
            const double s = n_rot.dot(pb[k]->normal.vec()) >= 0 ? 1.0 : -1.0;
            offsets.push_back({pb[k]->normal, s * pa[k]->offset, pb[k]->offset});
        }

        Vec2 t_xz = Vec2::Zero();
        bool solved = false;
        if (cand.pair_a.category == PairClass::VerticalNonParallel) {
            QuadricAccumulator acc;
            for (const OffsetPair& p : offsets) {
                acc = quadric_accumulate(acc, p.n, p.d_a, p.d_b, frame);
            }
            try {
                t_xz = quadric_minimize(acc);
                solved = true;
            } catch (const SingularSystem&) {
            }
        }
        if (!solved) {
            t_xz = horizontal_translation_parallel(offsets, frame).t_xz;
        }
        motion.translation = frame.x_w.vec() * t_xz.x() + frame.z_w.vec() * t_xz.y();
    }

    const auto [rot_mag, trans_mag] = magnitude(motion);
    if (rot_mag > vcfg.motion_rot_max || trans_mag > vcfg.motion_trans_max) {
        out.reason = RejectReason::MagnitudeExceeded;
        out.motion = motion;
        return out;
    }

    for (int k = 0; k < 2; ++k) {
        const Plane transformed = transform_plane(motion, *pa[k]);
        const std::uint64_t seed = candidate_seed(vcfg, cand.implied[0].a, cand.implied[0].b,
                                                  cand.implied[1].a, cand.implied[1].b) ^
                                   static_cast<std::uint64_t>(k + 1);
        const RejectReason why =
            check_match(transformed, *pb[k], vcfg, seed, &out.match_inlier_dist[k]);
        if (why != RejectReason::None) {
            out.reason = why;
            out.motion = motion;
            return out;
        }
    }

    out.accepted = true;
    out.motion = motion;
    return out;
}

MatchSet resolve_conflicts(const std::vector<AcceptedCandidate>& accepted) {
    std::vector<Match> all;
    for (const AcceptedCandidate& ac : accepted) {
        for (int k = 0; k < 2; ++k) {
            all.push_back({ac.candidate.implied[k].a, ac.candidate.implied[k].b, ac.match_class,
                           ac.match_inlier_dist[k]});
        }
    }
    std::sort(all.begin(), all.end(), [](const Match& x, const Match& y) {
        if (x.inlier_dist != y.inlier_dist) return x.inlier_dist < y.inlier_dist;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });

    MatchSet out;
    std::vector<int> used_a, used_b;
    for (const Match& m : all) {
        if (std::find(used_a.begin(), used_a.end(), m.a) != used_a.end()) continue;
        if (std::find(used_b.begin(), used_b.end(), m.b) != used_b.end()) continue;
        used_a.push_back(m.a);
        used_b.push_back(m.b);
        out.matches.push_back(m);
    }
    std::sort(out.matches.begin(), out.matches.end(),
              [](const Match& x, const Match& y) { return x.a < y.a; });
    return out;
}

MatchSet match_single_planes(const std::vector<Plane>& planes_a,
                             const std::vector<Plane>& planes_b,
                             const std::vector<PlaneClass>& classes_a,
                             const std::vector<PlaneClass>& classes_b, const UnitVec3& up_a,
                             const UnitVec3& up_b, const ValidationConfig& vcfg) {
    std::vector<AcceptedCandidate> accepted;
    for (int i = 0; i < static_cast<int>(planes_a.size()); ++i) {
        if (classes_a[i] == PlaneClass::Unclassified) continue;
        for (int j = 0; j < static_cast<int>(planes_b.size()); ++j) {
            if (classes_b[j] != classes_a[i]) continue;
            const Plane& a = planes_a[i];
            const Plane& b = planes_b[j];

            RigidMotion motion;
            if (classes_a[i] == PlaneClass::Vertical) {
                try {
                    motion.rotation = rotation_from_plane(a.normal, b.normal, up_a, up_b);
                } catch (const DegenerateInput&) {
                    continue;
                }
            } else {
                motion.rotation = align_rotation(up_a, up_b);
            }
            const Vec3 n_rot = motion.rotation * a.normal.vec();
            const double s = n_rot.dot(b.normal.vec()) >= 0 ? 1.0 : -1.0;
            // translation along the matched plane's normal only
            motion.translation = (b.offset - s * a.offset) * b.normal.vec();

            const auto [rot_mag, trans_mag] = magnitude(motion);
            if (rot_mag > vcfg.motion_rot_max || trans_mag > vcfg.motion_trans_max) continue;

            const Plane transformed = transform_plane(motion, a);
            double dist = 0.0;
            const std::uint64_t seed = candidate_seed(vcfg, i, j, -1, -1);
            if (check_match(transformed, b, vcfg, seed, &dist) != RejectReason::None) continue;

            AcceptedCandidate ac;
            ac.candidate.implied = {ImpliedMatch{i, j}, ImpliedMatch{i, j}};
            // a single implied match; duplicate entries collapse in conflict
            // resolution because both carry identical keys
            ac.motion = motion;
            ac.match_inlier_dist = {dist, dist};
            ac.match_class = classes_a[i];
            accepted.push_back(ac);
        }
    }
    MatchSet resolved = resolve_conflicts(accepted);
    return resolved;
}

MatchResult match_views(const std::vector<Plane>& view_a, const std::vector<Plane>& view_b,
                        const UnitVec3& up_a, const UnitVec3& up_b, const ClassConfig& ccfg,
                        const ValidationConfig& vcfg) {
    MatchResult result;
    if (view_a.empty() || view_b.empty()) {
        result.reason = NoMotionReason::NoPlanes;
        return result;
    }

    std::vector<PlaneClass> classes_a, classes_b;
    classes_a.reserve(view_a.size());
    classes_b.reserve(view_b.size());
    for (const Plane& p : view_a) classes_a.push_back(classify_plane(p, up_a, ccfg).cls);
    for (const Plane& p : view_b) classes_b.push_back(classify_plane(p, up_b, ccfg).cls);

    const std::vector<PlanePair> pairs_a = generate_pairs(view_a, classes_a, up_a, ccfg);
    const std::vector<PlanePair> pairs_b = generate_pairs(view_b, classes_b, up_b, ccfg);

    std::vector<AcceptedCandidate> accepted;
    for (const PlanePair& pa : pairs_a) {
        for (const PlanePair& pb : pairs_b) {
            if (pa.category != pb.category) continue;
            const double penalty = assignment_penalty(pa, pb);
            const double gate = pa.category == PairClass::VerticalNonParallel
                                    ? vcfg.angle_penalty_max
                                    : vcfg.distance_penalty_max;
            if (penalty > gate) continue;

            // both role assignments score identically under the view-agnostic
            // penalties; validation is what tells them apart
            const std::array<std::array<ImpliedMatch, 2>, 2> assignments = {{
                {ImpliedMatch{pa.first, pb.first}, ImpliedMatch{pa.second, pb.second}},
                {ImpliedMatch{pa.first, pb.second}, ImpliedMatch{pa.second, pb.first}},
            }};
            for (const auto& implied : assignments) {
                PairCandidate cand;
                cand.pair_a = pa;
                cand.pair_b = pb;
                cand.penalty = penalty;
                cand.implied = implied;
                const ValidationResult vr =
                    validate_candidate(cand, view_a, view_b, up_a, up_b, vcfg);
                if (!vr.accepted) continue;
                AcceptedCandidate ac;
                ac.candidate = cand;
                ac.motion = vr.motion;
                ac.match_inlier_dist = vr.match_inlier_dist;
                ac.match_class = pa.category == PairClass::Horizontal ? PlaneClass::Horizontal
                                                                      : PlaneClass::Vertical;
                accepted.push_back(ac);
            }
        }
    }

    result.matches = resolve_conflicts(accepted);
    if (result.matches.empty()) {
        result.matches =
            match_single_planes(view_a, view_b, classes_a, classes_b, up_a, up_b, vcfg);
    }
    if (result.matches.empty()) {
        result.reason = NoMotionReason::NoMatches;
        return result;
    }

    std::vector<MatchedPlane> matched;
    matched.reserve(result.matches.matches.size());
    for (const Match& m : result.matches.matches) {
        matched.push_back({view_a[m.a], view_b[m.b], m.cls});
    }
    try {
        result.motion = estimate_motion(matched, up_a, up_b, std::nullopt, ccfg);
    } catch (const Underconstrained&) {
        result.reason = NoMotionReason::InsufficientConstraints;
    }
    return result;
}

}  // namespace planereg
