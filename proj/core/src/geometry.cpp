#include "rfk/geometry.hpp"

#include <cmath>
#include <numbers>

#include "rfk/error.hpp"

namespace rfk {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double normalize_angle(double radians) {
  if (radians >= -kPi && radians < kPi) {
    return radians;
  }
  double wrapped = std::fmod(radians + kPi, kTwoPi);
  if (wrapped < 0.0) {
    wrapped += kTwoPi;
  }
  const double result = wrapped - kPi;
  return result >= kPi ? -kPi : result;
}

PolarPoint cartesian_to_polar(double x, double y, double z) {
  PolarPoint p;
  p.r = std::hypot(x, y);
  p.theta = (x == 0.0 && y == 0.0) ? 0.0 : normalize_angle(std::atan2(y, x));
  p.z = z;
  return p;
}

Eigen::Vector3d polar_to_cartesian(const PolarPoint& p) {
  return {p.r * std::cos(p.theta), p.r * std::sin(p.theta), p.z};
}

bool point_in_box(const Eigen::Vector3d& point, const BoxAnnotation& box) {
  const Eigen::Vector3d d = point - box.center;
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  // Rotate by -yaw about z.
  const double local_x = c * d.x() + s * d.y();
  const double local_y = -s * d.x() + c * d.y();
  return std::abs(local_x) <= 0.5 * box.size.x() && std::abs(local_y) <= 0.5 * box.size.y() &&
         std::abs(d.z()) <= 0.5 * box.size.z();
}

PerturbationRanges PerturbationRanges::benchmark_default() {
  return {0.0, deg_to_rad(5.0), 0.01, 0.05};
}

void validate(const PerturbationRanges& r) {
  const bool ok = std::isfinite(r.rot_max) && std::isfinite(r.trans_max) && 0.0 <= r.rot_min &&
                  r.rot_min <= r.rot_max && r.rot_max <= kPi && 0.0 <= r.trans_min &&
                  r.trans_min <= r.trans_max;
  if (!ok) {
    fail(ErrorCode::kInvalidArgument,
         "perturbation ranges need 0 <= rot_min <= rot_max <= pi and 0 <= trans_min <= trans_max");
  }
}

SE3Pose sample_rotation(Rng& rng, const PerturbationRanges& ranges) {
  validate(ranges);
  const double angle = rng.uniform(ranges.rot_min, ranges.rot_max);
  const auto axis = rng.unit_vector();
  const Eigen::AngleAxisd aa(angle, Eigen::Vector3d(axis[0], axis[1], axis[2]).normalized());
  return SE3Pose(Eigen::Quaterniond(aa), Eigen::Vector3d::Zero());
}

Eigen::Vector3d sample_translation(Rng& rng, const PerturbationRanges& ranges) {
  validate(ranges);
  const double magnitude = rng.uniform(ranges.trans_min, ranges.trans_max);
  const auto dir = rng.unit_vector();
  return magnitude * Eigen::Vector3d(dir[0], dir[1], dir[2]);
}

SE3Pose compose(const SE3Pose& a, const SE3Pose& b) {
  Eigen::Quaterniond q = a.rotation() * b.rotation();
  q.normalize();
  return SE3Pose(q, a.rotation() * b.translation() + a.translation());
}

}  // namespace rfk
