#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace rfk {

/// One LiDAR return in the ego frame (x forward, y left, z up).
struct LidarPoint {
  float x = 0.0f;
  float y = 0.0f;
  float z = 0.0f;
  float intensity = 0.0f;
  /// Only serialized when the cloud stride is 5.
  float time_offset = 0.0f;

  bool operator==(const LidarPoint&) const = default;
};

struct PointCloud {
  /// Floats per record on disk: 4 (x, y, z, intensity) or 5 (+ time offset).
  int stride = 4;
  std::vector<LidarPoint> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool operator==(const PointCloud&) const = default;
};

/// Rigid transform; rotation kept as a unit quaternion.
class SE3Pose {
 public:
  SE3Pose() : rotation_(Eigen::Quaterniond::Identity()), translation_(Eigen::Vector3d::Zero()) {}

  /// Renormalizes the quaternion unless it is already unit to within 1e-12,
  /// which keeps serialized poses bit-stable across round trips.
  SE3Pose(const Eigen::Quaterniond& rotation, const Eigen::Vector3d& translation);

  static SE3Pose from_wxyz(const std::array<double, 4>& q, const std::array<double, 3>& t);

  const Eigen::Quaterniond& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }
  Eigen::Matrix3d rotation_matrix() const { return rotation_.toRotationMatrix(); }

  std::array<double, 4> quaternion_wxyz() const {
    return {rotation_.w(), rotation_.x(), rotation_.y(), rotation_.z()};
  }
  std::array<double, 3> translation_xyz() const {
    return {translation_.x(), translation_.y(), translation_.z()};
  }

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation_ * p + translation_; }
  SE3Pose inverse() const;

  /// Rotation angle in [0, pi].
  double rotation_angle() const;

  bool operator==(const SE3Pose& other) const {
    return quaternion_wxyz() == other.quaternion_wxyz() && translation_xyz() == other.translation_xyz();
  }

 private:
  Eigen::Quaterniond rotation_;
  Eigen::Vector3d translation_;
};

struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  int image_width = 1;
  int image_height = 1;

  bool operator==(const CameraIntrinsics&) const = default;
};

/// 8-bit interleaved RGB.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, fill) {}

  std::uint8_t* at(int x, int y) { return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3; }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }

  bool operator==(const Image&) const = default;
};

enum class CameraStatus : std::uint8_t { kPresent, kMissing };

struct CameraFrame {
  std::string camera_id;
  CameraIntrinsics intrinsics;
  /// Camera-to-ego transform.
  SE3Pose extrinsic;
  /// Absent exactly when the camera is Missing.
  std::optional<Image> image;

  CameraStatus status() const { return image ? CameraStatus::kPresent : CameraStatus::kMissing; }
  bool operator==(const CameraFrame&) const = default;
};

struct BoxAnnotation {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  /// (length, width, height), metres.
  Eigen::Vector3d size = Eigen::Vector3d::Ones();
  double yaw = 0.0;
  std::string class_label;
  std::string instance_id;

  bool operator==(const BoxAnnotation&) const = default;
};

/// Present, or stuck on the payload of an earlier frame.
struct StreamStatus {
  std::optional<std::string> stuck_source;

  bool stuck() const { return stuck_source.has_value(); }
  static StreamStatus present() { return {}; }
  static StreamStatus stuck_on(std::string frame_id) { return {std::move(frame_id)}; }
  bool operator==(const StreamStatus&) const = default;
};

struct Frame {
  std::string frame_id;
  double timestamp = 0.0;
  PointCloud lidar;
  StreamStatus lidar_status;
  /// Keyed and iterated in camera_id order.
  std::map<std::string, CameraFrame> cameras;
  StreamStatus camera_status;
  std::vector<BoxAnnotation> annotations;

  bool operator==(const Frame&) const = default;
};

// Invariant checks; each throws rfk::Error(kSchemaViolation) naming the field.
void validate(const PointCloud& cloud);
void validate(const CameraIntrinsics& intrinsics);
void validate(const CameraFrame& camera);
void validate(const BoxAnnotation& box);
void validate(const Frame& frame);

}  // namespace rfk
