#include "rfk/frame_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <set>

#include "rfk/error.hpp"
#include "rfk/image_codec.hpp"

namespace rfk {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& what) {
  fail(ErrorCode::kSchemaViolation, field + ": " + what);
}

const Json& require(const Json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    schema(field, "missing");
  }
  return j.at(field);
}

std::string require_string(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_string()) {
    schema(field, "expected a string");
  }
  return v.get<std::string>();
}

bool safe_file_stem(const std::string& id) {
  return !id.empty() && id != "." && id != ".." && id.find_first_of("/\\") == std::string::npos;
}

Json status_to_json(const StreamStatus& status) {
  if (!status.stuck()) {
    return "present";
  }
  return {{"stuck_source", *status.stuck_source}};
}

StreamStatus status_from_json(const Json& j, const char* field) {
  if (j.is_string() && j.get<std::string>() == "present") {
    return StreamStatus::present();
  }
  if (j.is_object() && j.contains("stuck_source") && j.at("stuck_source").is_string()) {
    return StreamStatus::stuck_on(j.at("stuck_source").get<std::string>());
  }
  schema(field, "expected \"present\" or {\"stuck_source\": id}");
}

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::kMissingFile, path.string());
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kSchemaViolation, path.string() + ": " + e.what());
  }
}

void write_json_file(const Json& j, const fs::path& path) {
  const std::string text = j.dump(2) + "\n";
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace

std::optional<std::size_t> SequenceManifest::index_of(const std::string& frame_id) const {
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].frame_id == frame_id) {
      return i;
    }
  }
  return std::nullopt;
}

const FrameEntry& SequenceManifest::entry(const std::string& frame_id) const {
  const auto index = index_of(frame_id);
  if (!index) {
    fail(ErrorCode::kUnknownFrame, frame_id);
  }
  return frames[*index];
}

Json to_json(const FrameEntry& e) {
  Json cameras = Json::object();
  for (const auto& [id, cam] : e.cameras) {
    Json c = {{"intrinsics", to_json(cam.intrinsics)}, {"extrinsic", to_json(cam.extrinsic)}};
    c["image_path"] = cam.image_path ? Json(*cam.image_path) : Json(nullptr);
    if (cam.missing) {
      c["status"] = "missing";
    }
    cameras[id] = std::move(c);
  }
  Json j = {{"frame_id", e.frame_id},
            {"timestamp", e.timestamp},
            {"lidar_path", e.lidar_path},
            {"camera", std::move(cameras)},
            {"annotations_path", e.annotations_path}};
  if (e.lidar_status.stuck()) {
    j["lidar_status"] = status_to_json(e.lidar_status);
  }
  if (e.camera_status.stuck()) {
    j["camera_status"] = status_to_json(e.camera_status);
  }
  return j;
}

FrameEntry frame_entry_from_json(const Json& j) {
  if (!j.is_object()) {
    schema("frames[]", "expected an object");
  }
  FrameEntry e;
  e.frame_id = require_string(j, "frame_id");
  if (!safe_file_stem(e.frame_id)) {
    schema("frame_id", "'" + e.frame_id + "' is not a valid file stem");
  }
  const Json& ts = require(j, "timestamp");
  if (!ts.is_number()) {
    schema("timestamp", "expected a number");
  }
  e.timestamp = ts.get<double>();
  e.lidar_path = require_string(j, "lidar_path");
  e.annotations_path = require_string(j, "annotations_path");
  const Json& cameras = require(j, "camera");
  if (!cameras.is_object()) {
    schema("camera", "expected an object keyed by camera_id");
  }
  for (const auto& [id, c] : cameras.items()) {
    CameraEntry cam;
    const Json& path = require(c, "image_path");
    if (path.is_string()) {
      cam.image_path = path.get<std::string>();
    } else if (!path.is_null()) {
      schema("image_path", "expected a string or null");
    }
    cam.missing = !cam.image_path.has_value();
    if (c.contains("status")) {
      const Json& s = c.at("status");
      if (!s.is_string() || (s != "missing" && s != "present")) {
        schema("status", "expected \"present\" or \"missing\"");
      }
      cam.missing = cam.missing || s == "missing";
      if (s == "present" && !cam.image_path) {
        schema("status", "present camera " + id + " has no image_path");
      }
    }
    cam.intrinsics = intrinsics_from_json(require(c, "intrinsics"));
    cam.extrinsic = pose_from_json(require(c, "extrinsic"));
    e.cameras.emplace(id, std::move(cam));
  }
  if (j.contains("lidar_status")) {
    e.lidar_status = status_from_json(j.at("lidar_status"), "lidar_status");
  }
  if (j.contains("camera_status")) {
    e.camera_status = status_from_json(j.at("camera_status"), "camera_status");
  }
  return e;
}

SequenceManifest parse_manifest(const Json& j, const fs::path& base_dir) {
  if (!j.is_object()) {
    schema("manifest", "expected a JSON object");
  }
  SequenceManifest m;
  m.base_dir = base_dir;
  m.sequence_id = require_string(j, "sequence_id");
  const Json& stride = require(j, "point_stride");
  if (!stride.is_number_integer()) {
    schema("point_stride", "expected 4 or 5");
  }
  m.point_stride = stride.get<int>();
  const Json& cams = require(j, "cameras");
  if (!cams.is_array()) {
    schema("cameras", "expected an array of camera ids");
  }
  for (const Json& c : cams) {
    if (!c.is_string()) {
      schema("cameras", "expected an array of camera ids");
    }
    m.camera_inventory.push_back(c.get<std::string>());
  }
  const Json& frames = require(j, "frames");
  if (!frames.is_array()) {
    schema("frames", "expected an array");
  }
  for (const Json& f : frames) {
    m.frames.push_back(frame_entry_from_json(f));
  }
  validate(m);
  return m;
}

void validate(const SequenceManifest& m) {
  if (m.point_stride != 4 && m.point_stride != 5) {
    schema("point_stride", "expected 4 or 5");
  }
  const std::set<std::string> inventory(m.camera_inventory.begin(), m.camera_inventory.end());
  if (inventory.size() != m.camera_inventory.size()) {
    schema("cameras", "duplicate camera id");
  }
  for (const std::string& id : m.camera_inventory) {
    if (!safe_file_stem(id)) {
      schema("cameras", "'" + id + "' is not a valid file stem");
    }
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < m.frames.size(); ++i) {
    const FrameEntry& f = m.frames[i];
    if (!seen.insert(f.frame_id).second) {
      schema("frame_id", "duplicate '" + f.frame_id + "'");
    }
    if (i > 0 && !(f.timestamp > m.frames[i - 1].timestamp)) {
      fail(ErrorCode::kNonMonotoneTimestamps, "frame " + f.frame_id + " at index " + std::to_string(i));
    }
    for (const auto& [id, cam] : f.cameras) {
      if (!inventory.contains(id)) {
        schema("camera", "frame " + f.frame_id + " references unknown camera " + id);
      }
    }
  }
}

SequenceManifest load_manifest(const fs::path& path) {
  if (!fs::is_regular_file(path)) {
    fail(ErrorCode::kMissingFile, path.string());
  }
  return parse_manifest(read_json_file(path), path.parent_path());
}

Json to_json(const SequenceManifest& m) {
  Json frames = Json::array();
  for (const FrameEntry& f : m.frames) {
    frames.push_back(to_json(f));
  }
  return {{"sequence_id", m.sequence_id},
          {"point_stride", m.point_stride},
          {"cameras", m.camera_inventory},
          {"frames", std::move(frames)}};
}

void write_manifest(const SequenceManifest& manifest, const fs::path& path) {
  write_json_file(to_json(manifest), path);
}

std::vector<std::uint8_t> encode_cloud(const PointCloud& cloud) {
  validate(cloud);
  const auto stride = static_cast<std::size_t>(cloud.stride);
  std::vector<std::uint8_t> out(cloud.points.size() * stride * 4);
  std::uint8_t* dst = out.data();
  for (const LidarPoint& p : cloud.points) {
    const float values[5] = {p.x, p.y, p.z, p.intensity, p.time_offset};
    for (std::size_t k = 0; k < stride; ++k) {
      auto bits = std::bit_cast<std::uint32_t>(values[k]);
      if constexpr (std::endian::native == std::endian::big) {
        bits = __builtin_bswap32(bits);
      }
      std::memcpy(dst, &bits, 4);
      dst += 4;
    }
  }
  return out;
}

PointCloud decode_cloud(std::span<const std::uint8_t> bytes, int stride) {
  if (stride != 4 && stride != 5) {
    fail(ErrorCode::kSchemaViolation, "point_stride must be 4 or 5");
  }
  const std::size_t record = static_cast<std::size_t>(stride) * 4;
  if (bytes.size() % record != 0) {
    const std::size_t expected = (bytes.size() / record + 1) * record;
    fail(ErrorCode::kTruncatedCloud, "expected " + std::to_string(expected) + " bytes, got " +
                                         std::to_string(bytes.size()));
  }
  PointCloud cloud;
  cloud.stride = stride;
  cloud.points.resize(bytes.size() / record);
  const std::uint8_t* src = bytes.data();
  for (LidarPoint& p : cloud.points) {
    float values[5] = {0, 0, 0, 0, 0};
    for (int k = 0; k < stride; ++k) {
      std::uint32_t bits = 0;
      std::memcpy(&bits, src, 4);
      if constexpr (std::endian::native == std::endian::big) {
        bits = __builtin_bswap32(bits);
      }
      values[k] = std::bit_cast<float>(bits);
      src += 4;
    }
    p = {values[0], values[1], values[2], values[3], values[4]};
  }
  validate(cloud);
  return cloud;
}

std::vector<BoxAnnotation> load_annotations(const SequenceManifest& manifest, const std::string& frame_id) {
  const FrameEntry& e = manifest.entry(frame_id);
  const Json j = read_json_file(manifest.base_dir / e.annotations_path);
  if (!j.is_array()) {
    schema("annotations", "expected a JSON list");
  }
  std::vector<BoxAnnotation> boxes;
  boxes.reserve(j.size());
  for (const Json& b : j) {
    boxes.push_back(box_from_json(b));
  }
  return boxes;
}

Frame load_frame(const SequenceManifest& manifest, const std::string& frame_id) {
  const FrameEntry& e = manifest.entry(frame_id);
  Frame frame;
  frame.frame_id = e.frame_id;
  frame.timestamp = e.timestamp;
  frame.lidar_status = e.lidar_status;
  frame.camera_status = e.camera_status;

  const fs::path cloud_path = manifest.base_dir / e.lidar_path;
  const auto bytes = read_file_bytes(cloud_path);
  try {
    frame.lidar = decode_cloud(bytes, manifest.point_stride);
  } catch (const Error& err) {
    fail(err.code(), cloud_path.string() + ": " + err.what());
  }

  for (const auto& [id, entry] : e.cameras) {
    CameraFrame cam;
    cam.camera_id = id;
    cam.intrinsics = entry.intrinsics;
    cam.extrinsic = entry.extrinsic;
    if (!entry.missing) {
      cam.image = read_image(manifest.base_dir / *entry.image_path);
    }
    validate(cam);
    frame.cameras.emplace(id, std::move(cam));
  }
  frame.annotations = load_annotations(manifest, frame_id);
  return frame;
}

FrameEntry frame_entry_for(const Frame& frame, const WriteOptions& options, const std::string& prefix) {
  FrameEntry e;
  e.frame_id = frame.frame_id;
  e.timestamp = frame.timestamp;
  e.lidar_path = prefix + frame.frame_id + ".bin";
  e.annotations_path = prefix + frame.frame_id + ".annotations.json";
  e.lidar_status = frame.lidar_status;
  e.camera_status = frame.camera_status;
  for (const auto& [id, cam] : frame.cameras) {
    CameraEntry c;
    c.intrinsics = cam.intrinsics;
    c.extrinsic = cam.extrinsic;
    c.missing = cam.status() == CameraStatus::kMissing;
    if (!c.missing || options.materialize_missing) {
      c.image_path = prefix + frame.frame_id + "." + id + ".png";
    }
    e.cameras.emplace(id, std::move(c));
  }
  return e;
}

std::vector<fs::path> write_frame(const Frame& frame, const fs::path& out_dir, const WriteOptions& options) {
  validate(frame);
  if (!safe_file_stem(frame.frame_id)) {
    fail(ErrorCode::kInvalidArgument, "frame_id '" + frame.frame_id + "' is not a valid file stem");
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    fail(ErrorCode::kIoError, "cannot create " + out_dir.string() + ": " + ec.message());
  }
  const FrameEntry entry = frame_entry_for(frame, options);
  std::vector<fs::path> written;

  const fs::path cloud_path = out_dir / entry.lidar_path;
  write_file_bytes(cloud_path, encode_cloud(frame.lidar));
  written.push_back(cloud_path);

  for (const auto& [id, cam] : frame.cameras) {
    const CameraEntry& c = entry.cameras.at(id);
    if (!c.image_path) {
      continue;
    }
    const fs::path image_path = out_dir / *c.image_path;
    if (cam.image) {
      write_png(*cam.image, image_path);
    } else {
      write_png(Image(cam.intrinsics.image_width, cam.intrinsics.image_height, 0), image_path);
    }
    written.push_back(image_path);
  }

  Json boxes = Json::array();
  for (const BoxAnnotation& b : frame.annotations) {
    boxes.push_back(to_json(b));
  }
  const fs::path annotations_path = out_dir / entry.annotations_path;
  write_json_file(boxes, annotations_path);
  written.push_back(annotations_path);

  const fs::path meta_path = out_dir / (frame.frame_id + ".frame.json");
  write_json_file(to_json(entry), meta_path);
  written.push_back(meta_path);
  return written;
}

}  // namespace rfk
