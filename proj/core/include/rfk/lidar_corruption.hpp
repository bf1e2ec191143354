#pragma once

#include <span>

#include "rfk/rng.hpp"
#include "rfk/types.hpp"

namespace rfk {

/// Visible half-angle of the forward wedge, radians in [0, pi].
struct FovParams {
  double theta0 = 0.0;

  static FovParams from_degrees(double degrees);
  bool operator==(const FovParams&) const = default;
};

struct ObjectFailureParams {
  double drop_prob = 0.5;
  bool operator==(const ObjectFailureParams&) const = default;
};

void validate(const FovParams& params);
void validate(const ObjectFailureParams& params);

/// Keeps the points with -theta0 <= azimuth < theta0, in input order.
/// theta0 = 0 keeps nothing; theta0 = pi keeps everything.
PointCloud limit_fov(const PointCloud& cloud, const FovParams& params);

/// One Bernoulli(drop_prob) draw per annotation, in annotation order; a
/// firing draw removes every point inside that box. Points outside all
/// boxes are copied through untouched.
PointCloud object_failure(const PointCloud& cloud, std::span<const BoxAnnotation> annotations,
                          const ObjectFailureParams& params, Rng& rng);

// Frame-level wrappers: only the cloud changes.
Frame limit_fov(const Frame& frame, const FovParams& params);
Frame object_failure(const Frame& frame, const ObjectFailureParams& params, Rng& rng);

/// Replaces the frame's cloud with the source's and marks the LiDAR stream
/// stuck. Throws kNoPredecessor when source is null, kInvalidArgument when
/// the source does not precede the frame.
Frame lidar_stuck_view(const Frame& frame, const Frame* source);

}  // namespace rfk
