#include "rfk/camera_corruption.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "rfk/error.hpp"

namespace rfk {

MissingParams MissingParams::drop_one(std::string camera_id) {
  return {Mode::kDropOne, {std::move(camera_id)}};
}

MissingParams MissingParams::keep_front_only(std::string front_id) {
  return {Mode::kKeepFrontOnly, {std::move(front_id)}};
}

MissingParams MissingParams::drop_set(std::vector<std::string> camera_ids) {
  return {Mode::kDropSet, std::move(camera_ids)};
}

namespace {

void require_camera(const Frame& frame, const std::string& camera_id) {
  if (!frame.cameras.contains(camera_id)) {
    fail(ErrorCode::kUnknownCamera, camera_id);
  }
}

std::set<std::string> resolve_dropped(const Frame& frame, const MissingParams& params) {
  std::set<std::string> dropped;
  switch (params.mode) {
    case MissingParams::Mode::kDropOne:
      if (params.cameras.size() != 1) {
        fail(ErrorCode::kInvalidArgument, "DropOne takes exactly one camera id");
      }
      require_camera(frame, params.cameras.front());
      dropped.insert(params.cameras.front());
      break;
    case MissingParams::Mode::kKeepFrontOnly: {
      if (params.cameras.size() != 1) {
        fail(ErrorCode::kInvalidArgument, "KeepFrontOnly takes exactly one front camera id");
      }
      const std::string& front = params.cameras.front();
      require_camera(frame, front);
      for (const auto& [id, camera] : frame.cameras) {
        if (id != front) {
          dropped.insert(id);
        }
      }
      break;
    }
    case MissingParams::Mode::kDropSet:
      for (const std::string& id : params.cameras) {
        require_camera(frame, id);
        dropped.insert(id);
      }
      break;
  }
  return dropped;
}

}  // namespace

Frame drop_cameras(const Frame& frame, const MissingParams& params) {
  const std::set<std::string> dropped = resolve_dropped(frame, params);
  Frame out = frame;
  for (const std::string& id : dropped) {
    out.cameras.at(id).image.reset();
  }
  return out;
}

void validate(const OcclusionMaskSpec& s) {
  const auto ordered = [](double lo, double hi) { return std::isfinite(hi) && 0.0 <= lo && lo <= hi; };
  const bool ok = s.blob_count_min >= 0 && s.blob_count_min <= s.blob_count_max &&
                  ordered(s.blob_radius_min, s.blob_radius_max) && ordered(s.opacity_min, s.opacity_max) &&
                  s.opacity_max <= 1.0 && ordered(s.jitter_translation_min, s.jitter_translation_max) &&
                  ordered(s.jitter_rotation_min, s.jitter_rotation_max) && s.falloff_exponent > 0.0 &&
                  std::isfinite(s.falloff_exponent);
  if (!ok) {
    fail(ErrorCode::kInvalidArgument, "occlusion mask spec: ranges must be ordered and non-negative, opacity <= 1");
  }
}

double OcclusionMask::coverage(float threshold) const {
  if (alpha.empty()) {
    return 0.0;
  }
  const auto n = std::count_if(alpha.begin(), alpha.end(), [threshold](float a) { return a > threshold; });
  return static_cast<double>(n) / static_cast<double>(alpha.size());
}

namespace {

void splat_blob(OcclusionMask& mask, const OcclusionBlob& blob, double exponent) {
  if (blob.radius <= 0.0 || blob.opacity <= 0.0) {
    return;
  }
  const int x0 = std::max(0, static_cast<int>(std::ceil(blob.cx - blob.radius)));
  const int x1 = std::min(mask.width - 1, static_cast<int>(std::floor(blob.cx + blob.radius)));
  const int y0 = std::max(0, static_cast<int>(std::ceil(blob.cy - blob.radius)));
  const int y1 = std::min(mask.height - 1, static_cast<int>(std::floor(blob.cy + blob.radius)));
  for (int y = y0; y <= y1; ++y) {
    const double dy = y - blob.cy;
    for (int x = x0; x <= x1; ++x) {
      const double dx = x - blob.cx;
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d >= blob.radius) {
        continue;
      }
      const double falloff = 1.0 - d / blob.radius;
      const double a = blob.opacity * (exponent == 1.0 ? falloff : std::pow(falloff, exponent));
      float& dst = mask.at(x, y);
      dst = static_cast<float>(dst + a * (1.0 - dst));
    }
  }
}

}  // namespace

OcclusionMask generate_mask(const OcclusionMaskSpec& spec, int height, int width, Rng& rng) {
  validate(spec);
  if (height <= 0 || width <= 0) {
    fail(ErrorCode::kInvalidArgument, "mask dims must be positive");
  }
  OcclusionMask mask(width, height, spec.color);

  const auto count = rng.uniform_int(spec.blob_count_min, spec.blob_count_max);
  std::vector<OcclusionBlob> blobs;
  blobs.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    OcclusionBlob blob;
    blob.cx = static_cast<int>(rng.uniform_int(0, width - 1));
    blob.cy = static_cast<int>(rng.uniform_int(0, height - 1));
    blob.radius = rng.uniform(spec.blob_radius_min, spec.blob_radius_max);
    blob.opacity = rng.uniform(spec.opacity_min, spec.opacity_max);
    blobs.push_back(blob);
  }

  // Film jitter: rotate about the image centre, then shift. Discs are
  // rotation invariant, so moving the centres is exact.
  const double rot_mag = rng.uniform(spec.jitter_rotation_min, spec.jitter_rotation_max);
  const double angle = rng.bernoulli(0.5) ? -rot_mag : rot_mag;
  const double shift = rng.uniform(spec.jitter_translation_min, spec.jitter_translation_max);
  const double heading = 2.0 * std::numbers::pi * rng.uniform01();

  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double mid_x = 0.5 * (width - 1);
  const double mid_y = 0.5 * (height - 1);
  const double tx = shift * std::cos(heading);
  const double ty = shift * std::sin(heading);
  for (OcclusionBlob& blob : blobs) {
    const double dx = blob.cx - mid_x;
    const double dy = blob.cy - mid_y;
    blob.cx = static_cast<int>(std::lround(mid_x + c * dx - s * dy + tx));
    blob.cy = static_cast<int>(std::lround(mid_y + s * dx + c * dy + ty));
    splat_blob(mask, blob, spec.falloff_exponent);
  }
  mask.blobs = std::move(blobs);
  return mask;
}

Image apply_occlusion(const Image& image, const OcclusionMask& mask) {
  if (image.width != mask.width || image.height != mask.height) {
    fail(ErrorCode::kDimensionMismatch, "image " + std::to_string(image.width) + "x" +
                                            std::to_string(image.height) + " vs mask " +
                                            std::to_string(mask.width) + "x" + std::to_string(mask.height));
  }
  Image out = image;
  const std::size_t n = mask.alpha.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = mask.alpha[i];
    if (a == 0.0) {
      continue;
    }
    std::uint8_t* px = out.pixels.data() + i * 3;
    for (int ch = 0; ch < 3; ++ch) {
      const double v = a * mask.color[ch] + (1.0 - a) * px[ch];
      px[ch] = static_cast<std::uint8_t>(std::clamp<long>(std::lround(v), 0, 255));
    }
  }
  return out;
}

Frame occlude_cameras(const Frame& frame, const OcclusionParams& params, Rng& rng) {
  validate(params.mask);
  for (const std::string& id : params.cameras) {
    require_camera(frame, id);
  }
  const std::set<std::string> targets(params.cameras.begin(), params.cameras.end());
  Frame out = frame;
  for (auto& [id, camera] : out.cameras) {
    if (!camera.image || (!targets.empty() && !targets.contains(id))) {
      continue;
    }
    const OcclusionMask mask = generate_mask(params.mask, camera.image->height, camera.image->width, rng);
    camera.image = apply_occlusion(*camera.image, mask);
  }
  return out;
}

Frame perturb_calibration(const Frame& frame, const PerturbationRanges& ranges, Rng& rng) {
  validate(ranges);
  Frame out = frame;
  for (auto& [id, camera] : out.cameras) {
    if (camera.status() != CameraStatus::kPresent) {
      continue;
    }
    const SE3Pose rotation = sample_rotation(rng, ranges);
    const Eigen::Vector3d translation = sample_translation(rng, ranges);
    camera.extrinsic = compose(SE3Pose(rotation.rotation(), translation), camera.extrinsic);
  }
  return out;
}

Frame camera_stuck_view(const Frame& frame, const Frame* source) {
  if (source == nullptr) {
    fail(ErrorCode::kNoPredecessor, "frame " + frame.frame_id + " has no predecessor to stick to");
  }
  if (!(source->timestamp < frame.timestamp)) {
    fail(ErrorCode::kInvalidArgument,
         "stuck source " + source->frame_id + " does not precede " + frame.frame_id);
  }
  Frame out = frame;
  out.cameras = source->cameras;
  out.camera_status = source->camera_status.stuck() ? source->camera_status
                                                     : StreamStatus::stuck_on(source->frame_id);
  return out;
}

}  // namespace rfk
