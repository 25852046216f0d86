#pragma once

#include "planereg/geometry.hpp"

namespace planereg {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }

enum class PlaneClass { Horizontal, Vertical, Unclassified };
enum class PairClass { Horizontal, VerticalParallel, VerticalNonParallel, Other };

/// Angle thresholds (in radians) at which the class probability crosses 0.5.
/// The Gaussian standard deviations are derived from them.
struct ClassConfig {
    double alpha_thresh_up = deg_to_rad(10.0);
    double alpha_thresh_rel = deg_to_rad(10.0);

    double sigma_up() const;
    double sigma_rel() const;
};

/// Unnormalized Gaussian exp(-(alpha-mu)^2 / (2 sigma^2)).
double gaussian(double alpha, double mu, double sigma);

/// Standard deviation that makes the Gaussian centered at mu reach 0.5 at
/// alpha_thresh. Throws InvalidThreshold when alpha_thresh == mu.
double sigma_from_threshold(double alpha_thresh, double mu);

struct PlaneClassification {
    PlaneClass cls = PlaneClass::Unclassified;
    double alpha_up = 0.0;  // arccos(|N . up|)
};

struct PairClassification {
    PairClass cls = PairClass::Other;
    double alpha_rel = 0.0;  // arccos(|N_i . N_j|)
};

/// Horizontal / vertical decision from the angle to Up: argmax of the two
/// Gaussians, rejected to Unclassified when the winner is below 0.5 or tied.
PlaneClassification classify_plane(const Plane& plane, const UnitVec3& up,
                                   const ClassConfig& config = {});

/// Pair category from the per-plane classes plus the relative angle between
/// normals. Mixed or unclassified planes give Other.
PairClassification classify_pair(const Plane& a, const Plane& b, const UnitVec3& up,
                                 const ClassConfig& config = {});

/// Relative angle arccos(|n_a . n_b|), safe against roundoff.
double relative_angle(const UnitVec3& a, const UnitVec3& b);

/// Angle to the reference direction, arccos(|n . up|).
double up_angle(const UnitVec3& n, const UnitVec3& up);

}  // namespace planereg
