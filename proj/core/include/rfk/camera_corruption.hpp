#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "rfk/geometry.hpp"
#include "rfk/rng.hpp"
#include "rfk/types.hpp"

namespace rfk {

inline constexpr std::string_view kDefaultFrontCamera = "CAM_FRONT";

struct MissingParams {
  enum class Mode : std::uint8_t { kDropOne, kKeepFrontOnly, kDropSet };

  Mode mode = Mode::kDropOne;
  /// DropOne: the dropped camera. KeepFrontOnly: the front camera to keep.
  /// DropSet: every dropped camera.
  std::vector<std::string> cameras;

  static MissingParams drop_one(std::string camera_id);
  static MissingParams keep_front_only(std::string front_id = std::string(kDefaultFrontCamera));
  static MissingParams drop_set(std::vector<std::string> camera_ids);
  bool operator==(const MissingParams&) const = default;
};

/// Degrees of freedom of the procedural mud-spot generator.
struct OcclusionMaskSpec {
  int blob_count_min = 4;
  int blob_count_max = 12;
  double blob_radius_min = 30.0;  // px
  double blob_radius_max = 140.0;
  double opacity_min = 0.7;
  double opacity_max = 1.0;
  double jitter_translation_min = 0.0;  // px
  double jitter_translation_max = 60.0;
  double jitter_rotation_min = 0.0;  // rad
  double jitter_rotation_max = 0.2617993877991494;  // 15 deg
  std::array<std::uint8_t, 3> color = {86, 68, 48};
  /// Alpha = opacity * (1 - d / radius)^falloff_exponent inside a blob.
  double falloff_exponent = 1.0;

  bool operator==(const OcclusionMaskSpec&) const = default;
};

void validate(const OcclusionMaskSpec& spec);

struct OcclusionBlob {
  /// Final (post-jitter) centre, integer pixel coordinates.
  int cx = 0;
  int cy = 0;
  double radius = 0.0;
  double opacity = 0.0;
};

struct OcclusionMask {
  int width = 0;
  int height = 0;
  std::vector<float> alpha;
  std::array<std::uint8_t, 3> color = {0, 0, 0};
  std::vector<OcclusionBlob> blobs;

  OcclusionMask() = default;
  OcclusionMask(int w, int h, std::array<std::uint8_t, 3> c)
      : width(w), height(h), alpha(static_cast<std::size_t>(w) * h, 0.0f), color(c) {}

  float at(int x, int y) const { return alpha[static_cast<std::size_t>(y) * width + x]; }
  float& at(int x, int y) { return alpha[static_cast<std::size_t>(y) * width + x]; }

  /// Fraction of pixels with alpha > threshold.
  double coverage(float threshold = 0.5f) const;
};

/// Lens-occlusion case parameters. An empty camera list targets every
/// Present camera.
struct OcclusionParams {
  OcclusionMaskSpec mask;
  std::vector<std::string> cameras;
  bool operator==(const OcclusionParams&) const = default;
};

/// Marks the targeted cameras Missing. Throws kUnknownCamera for ids absent
/// from the frame.
Frame drop_cameras(const Frame& frame, const MissingParams& params);

/// Draw order: blob count, then per blob (x, y, radius, opacity), then the
/// rotation jitter (magnitude, sign) and translation jitter (magnitude, heading).
OcclusionMask generate_mask(const OcclusionMaskSpec& spec, int height, int width, Rng& rng);

/// out = round(alpha * color + (1 - alpha) * in), per channel.
Image apply_occlusion(const Image& image, const OcclusionMask& mask);

/// Generates one mask per targeted camera (camera_id order) and composites it.
Frame occlude_cameras(const Frame& frame, const OcclusionParams& params, Rng& rng);

/// Left-composes independent rotation and translation noise onto every
/// Present camera's extrinsic, in camera_id order.
Frame perturb_calibration(const Frame& frame, const PerturbationRanges& ranges, Rng& rng);

/// Replaces every camera (payload and extrinsic) with the source's and marks
/// the camera stream stuck.
Frame camera_stuck_view(const Frame& frame, const Frame* source);

}  // namespace rfk
