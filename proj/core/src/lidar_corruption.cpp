#include "rfk/lidar_corruption.hpp"

#include <cmath>
#include <numbers>

#include "rfk/error.hpp"
#include "rfk/geometry.hpp"

namespace rfk {

FovParams FovParams::from_degrees(double degrees) { return {deg_to_rad(degrees)}; }

void validate(const FovParams& params) {
  if (!(params.theta0 >= 0.0 && params.theta0 <= std::numbers::pi)) {
    fail(ErrorCode::kInvalidArgument, "theta0 must lie in [0, pi]");
  }
}

void validate(const ObjectFailureParams& params) {
  if (!(params.drop_prob >= 0.0 && params.drop_prob <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "drop_prob must lie in [0, 1]");
  }
}

PointCloud limit_fov(const PointCloud& cloud, const FovParams& params) {
  validate(params);
  PointCloud out;
  out.stride = cloud.stride;
  out.points.reserve(cloud.points.size());
  for (const LidarPoint& p : cloud.points) {
    const double theta = azimuth(p);
    if (theta >= -params.theta0 && theta < params.theta0) {
      out.points.push_back(p);
    }
  }
  return out;
}

PointCloud object_failure(const PointCloud& cloud, std::span<const BoxAnnotation> annotations,
                          const ObjectFailureParams& params, Rng& rng) {
  validate(params);
  std::vector<const BoxAnnotation*> failed;
  for (const BoxAnnotation& box : annotations) {
    // Draw for every box, even empty ones, so the stream never shifts.
    if (rng.bernoulli(params.drop_prob)) {
      failed.push_back(&box);
    }
  }

  PointCloud out;
  out.stride = cloud.stride;
  if (failed.empty()) {
    out.points = cloud.points;
    return out;
  }
  out.points.reserve(cloud.points.size());
  for (const LidarPoint& p : cloud.points) {
    const Eigen::Vector3d xyz(p.x, p.y, p.z);
    bool inside = false;
    for (const BoxAnnotation* box : failed) {
      if (point_in_box(xyz, *box)) {
        inside = true;
        break;
      }
    }
    if (!inside) {
      out.points.push_back(p);
    }
  }
  return out;
}

Frame limit_fov(const Frame& frame, const FovParams& params) {
  Frame out = frame;
  out.lidar = limit_fov(frame.lidar, params);
  return out;
}

Frame object_failure(const Frame& frame, const ObjectFailureParams& params, Rng& rng) {
  Frame out = frame;
  out.lidar = object_failure(frame.lidar, frame.annotations, params, rng);
  return out;
}

Frame lidar_stuck_view(const Frame& frame, const Frame* source) {
  if (source == nullptr) {
    fail(ErrorCode::kNoPredecessor, "frame " + frame.frame_id + " has no predecessor to stick to");
  }
  if (!(source->timestamp < frame.timestamp)) {
    fail(ErrorCode::kInvalidArgument,
         "stuck source " + source->frame_id + " does not precede " + frame.frame_id);
  }
  Frame out = frame;
  out.lidar = source->lidar;
  // A stuck source forwards its own origin so the status names the real capture.
  out.lidar_status = source->lidar_status.stuck() ? source->lidar_status
                                                  : StreamStatus::stuck_on(source->frame_id);
  return out;
}

}  // namespace rfk
