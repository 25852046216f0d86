#include "planereg/classification.hpp"

#include <algorithm>
#include <cmath>

namespace planereg {

double gaussian(double alpha, double mu, double sigma) {
    const double d = alpha - mu;
    return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

double sigma_from_threshold(double alpha_thresh, double mu) {
    const double d = alpha_thresh - mu;
    if (d == 0.0) {
        throw InvalidThreshold("sigma_from_threshold: alpha_thresh equals mu");
    }
    return std::sqrt(-(d * d) / (2.0 * std::log(0.5)));
}

double ClassConfig::sigma_up() const { return sigma_from_threshold(alpha_thresh_up, 0.0); }
double ClassConfig::sigma_rel() const { return sigma_from_threshold(alpha_thresh_rel, 0.0); }

double relative_angle(const UnitVec3& a, const UnitVec3& b) {
    // atan2 form of arccos(|a.b|); exact at both ends of [0, pi/2]
    const double c = std::abs(a.dot(b));
    const double s = a.vec().cross(b.vec()).norm();
    return std::atan2(s, c);
}

double up_angle(const UnitVec3& n, const UnitVec3& up) {
    return relative_angle(n, up);
}

PlaneClassification classify_plane(const Plane& plane, const UnitVec3& up,
                                   const ClassConfig& config) {
    PlaneClassification out;
    out.alpha_up = up_angle(plane.normal, up);

    const double sigma = config.sigma_up();
    const double g_h = gaussian(out.alpha_up, 0.0, sigma);
    const double g_v = gaussian(out.alpha_up, kPi / 2.0, sigma);
    const double best = std::max(g_h, g_v);

    if (best < 0.5 || std::abs(g_h - g_v) < 1e-12) {
        out.cls = PlaneClass::Unclassified;
    } else {
        out.cls = g_h > g_v ? PlaneClass::Horizontal : PlaneClass::Vertical;
    }
    return out;
}

PairClassification classify_pair(const Plane& a, const Plane& b, const UnitVec3& up,
                                 const ClassConfig& config) {
    PairClassification out;
    out.alpha_rel = relative_angle(a.normal, b.normal);

    const PlaneClass ca = classify_plane(a, up, config).cls;
    const PlaneClass cb = classify_plane(b, up, config).cls;
    if (ca == PlaneClass::Unclassified || cb == PlaneClass::Unclassified || ca != cb) {
        out.cls = PairClass::Other;
        return out;
    }
    if (ca == PlaneClass::Horizontal) {
        out.cls = PairClass::Horizontal;
        return out;
    }

    const double sigma = config.sigma_rel();
    const double g_par = gaussian(out.alpha_rel, 0.0, sigma);
    const double g_non = gaussian(out.alpha_rel, kPi / 2.0, sigma);
    const double best = std::max(g_par, g_non);
    if (best < 0.5 || std::abs(g_par - g_non) < 1e-12) {
        out.cls = PairClass::Other;
    } else {
        out.cls = g_par > g_non ? PairClass::VerticalParallel : PairClass::VerticalNonParallel;
    }
    return out;
}

}  // namespace planereg
