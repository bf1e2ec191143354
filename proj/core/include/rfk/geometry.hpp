#pragma once

#include "rfk/rng.hpp"
#include "rfk/types.hpp"

namespace rfk {

struct PolarPoint {
  double r = 0.0;
  /// Azimuth in [-pi, pi); 0 is straight ahead (+x).
  double theta = 0.0;
  double z = 0.0;
};

/// Maps any finite angle into the half-open interval [-pi, pi).
double normalize_angle(double radians);

PolarPoint cartesian_to_polar(double x, double y, double z);
Eigen::Vector3d polar_to_cartesian(const PolarPoint& p);

/// Azimuth of a LiDAR point, normalized to [-pi, pi). The origin maps to 0.
inline double azimuth(const LidarPoint& p) { return cartesian_to_polar(p.x, p.y, p.z).theta; }

/// Closed-box containment in the box frame (boundary counts as inside).
bool point_in_box(const Eigen::Vector3d& point, const BoxAnnotation& box);

/// Bounds for extrinsic noise. Rotation bounds the total rotation angle,
/// translation bounds the Euclidean displacement.
struct PerturbationRanges {
  double rot_min = 0.0;
  double rot_max = 0.0;
  double trans_min = 0.0;
  double trans_max = 0.0;

  /// 0 to 5 degrees, 1 to 5 cm.
  static PerturbationRanges benchmark_default();
  bool operator==(const PerturbationRanges&) const = default;
};

void validate(const PerturbationRanges& ranges);

/// Pure rotation: axis uniform on the sphere, angle uniform in [rot_min, rot_max].
/// Consumes one angle draw followed by one axis draw.
SE3Pose sample_rotation(Rng& rng, const PerturbationRanges& ranges);

/// Direction uniform on the sphere, magnitude uniform in [trans_min, trans_max].
Eigen::Vector3d sample_translation(Rng& rng, const PerturbationRanges& ranges);

/// The transform p -> a(b(p)).
SE3Pose compose(const SE3Pose& a, const SE3Pose& b);

inline double deg_to_rad(double deg) { return deg * (3.14159265358979323846 / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / 3.14159265358979323846); }

}  // namespace rfk
