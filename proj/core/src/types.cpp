#include "rfk/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rfk/error.hpp"

namespace rfk {

SE3Pose::SE3Pose(const Eigen::Quaterniond& rotation, const Eigen::Vector3d& translation)
    : rotation_(rotation), translation_(translation) {
  const double norm = rotation_.norm();
  if (!std::isfinite(norm) || norm < 1e-12) {
    fail(ErrorCode::kInvalidArgument, "quaternion must be finite and non-zero");
  }
  if (!translation_.allFinite()) {
    fail(ErrorCode::kInvalidArgument, "translation must be finite");
  }
  if (std::abs(norm - 1.0) > 1e-12) {
    rotation_.coeffs() /= norm;
  }
}

SE3Pose SE3Pose::from_wxyz(const std::array<double, 4>& q, const std::array<double, 3>& t) {
  return SE3Pose(Eigen::Quaterniond(q[0], q[1], q[2], q[3]), Eigen::Vector3d(t[0], t[1], t[2]));
}

SE3Pose SE3Pose::inverse() const {
  const Eigen::Quaterniond inv = rotation_.conjugate();
  return SE3Pose(inv, -(inv * translation_));
}

double SE3Pose::rotation_angle() const {
  // Same as 2 acos(|w|) but well conditioned near the identity.
  return 2.0 * std::atan2(rotation_.vec().norm(), std::abs(rotation_.w()));
}

void validate(const PointCloud& cloud) {
  if (cloud.stride != 4 && cloud.stride != 5) {
    fail(ErrorCode::kSchemaViolation, "point_stride must be 4 or 5");
  }
  for (const LidarPoint& p : cloud.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z) || !std::isfinite(p.time_offset)) {
      fail(ErrorCode::kSchemaViolation, "points: non-finite coordinate");
    }
    if (!(p.intensity >= 0.0f) || !std::isfinite(p.intensity)) {
      fail(ErrorCode::kSchemaViolation, "points: intensity must be finite and >= 0");
    }
  }
}

void validate(const CameraIntrinsics& k) {
  if (!(k.fx > 0.0) || !(k.fy > 0.0)) {
    fail(ErrorCode::kSchemaViolation, "intrinsics: fx and fy must be > 0");
  }
  if (k.image_width <= 0 || k.image_height <= 0) {
    fail(ErrorCode::kSchemaViolation, "intrinsics: image dims must be positive");
  }
  if (!(k.cx >= 0.0 && k.cx < k.image_width) || !(k.cy >= 0.0 && k.cy < k.image_height)) {
    fail(ErrorCode::kSchemaViolation, "intrinsics: principal point outside the image");
  }
}

void validate(const CameraFrame& camera) {
  validate(camera.intrinsics);
  if (camera.image) {
    const Image& img = *camera.image;
    if (img.width != camera.intrinsics.image_width || img.height != camera.intrinsics.image_height) {
      fail(ErrorCode::kSchemaViolation, "camera " + camera.camera_id + ": image dims differ from intrinsics");
    }
    if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height * 3) {
      fail(ErrorCode::kSchemaViolation, "camera " + camera.camera_id + ": pixel buffer size");
    }
  }
}

void validate(const BoxAnnotation& box) {
  if (!box.center.allFinite() || !box.size.allFinite() || !std::isfinite(box.yaw)) {
    fail(ErrorCode::kSchemaViolation, "annotation " + box.instance_id + ": non-finite value");
  }
  if ((box.size.array() <= 0.0).any()) {
    fail(ErrorCode::kSchemaViolation, "annotation " + box.instance_id + ": size components must be > 0");
  }
  if (!(box.yaw >= -std::numbers::pi && box.yaw < std::numbers::pi)) {
    fail(ErrorCode::kSchemaViolation, "annotation " + box.instance_id + ": yaw outside [-pi, pi)");
  }
}

void validate(const Frame& frame) {
  validate(frame.lidar);
  for (const auto& [id, camera] : frame.cameras) {
    if (id != camera.camera_id) {
      fail(ErrorCode::kSchemaViolation, "cameras: key " + id + " differs from camera_id");
    }
    validate(camera);
  }
  for (const BoxAnnotation& box : frame.annotations) {
    validate(box);
  }
}

}  // namespace rfk
