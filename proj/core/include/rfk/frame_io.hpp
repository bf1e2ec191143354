#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rfk/json_codec.hpp"
#include "rfk/types.hpp"

namespace rfk {

struct CameraEntry {
  /// Relative to the manifest directory. Empty when the camera is Missing,
  /// unless a placeholder was materialized.
  std::optional<std::string> image_path;
  bool missing = false;
  CameraIntrinsics intrinsics;
  SE3Pose extrinsic;

  bool operator==(const CameraEntry&) const = default;
};

struct FrameEntry {
  std::string frame_id;
  double timestamp = 0.0;
  std::string lidar_path;
  std::map<std::string, CameraEntry> cameras;
  std::string annotations_path;
  StreamStatus lidar_status;
  StreamStatus camera_status;

  bool operator==(const FrameEntry&) const = default;
};

struct SequenceManifest {
  std::string sequence_id;
  int point_stride = 4;
  std::vector<std::string> camera_inventory;
  std::vector<FrameEntry> frames;
  /// Directory that relative paths resolve against; not serialized.
  std::filesystem::path base_dir;

  std::optional<std::size_t> index_of(const std::string& frame_id) const;
  const FrameEntry& entry(const std::string& frame_id) const;
};

/// Parses and validates a manifest without touching any payload file.
SequenceManifest load_manifest(const std::filesystem::path& path);
SequenceManifest parse_manifest(const Json& j, const std::filesystem::path& base_dir);
void validate(const SequenceManifest& manifest);

Json to_json(const FrameEntry& entry);
FrameEntry frame_entry_from_json(const Json& j);
Json to_json(const SequenceManifest& manifest);
void write_manifest(const SequenceManifest& manifest, const std::filesystem::path& path);

/// Little-endian float32 records, stride floats per point, no header.
std::vector<std::uint8_t> encode_cloud(const PointCloud& cloud);
/// Throws kTruncatedCloud when the size is not a whole number of records.
PointCloud decode_cloud(std::span<const std::uint8_t> bytes, int stride);

/// Loads cloud, images and annotations of one frame. Missing cameras are not
/// decoded.
Frame load_frame(const SequenceManifest& manifest, const std::string& frame_id);
std::vector<BoxAnnotation> load_annotations(const SequenceManifest& manifest, const std::string& frame_id);

struct WriteOptions {
  /// Also emit a black PNG for Missing cameras (still recorded as missing).
  bool materialize_missing = false;
};

/// The entry write_frame produces, with every path prefixed by path_prefix.
FrameEntry frame_entry_for(const Frame& frame, const WriteOptions& options = {},
                           const std::string& path_prefix = "");

/// Writes <id>.bin, <id>.<camera>.png, <id>.annotations.json and the entry
/// metadata <id>.frame.json into out_dir. Returns the written paths in that
/// order (cameras in id order).
std::vector<std::filesystem::path> write_frame(const Frame& frame, const std::filesystem::path& out_dir,
                                               const WriteOptions& options = {});

}  // namespace rfk
