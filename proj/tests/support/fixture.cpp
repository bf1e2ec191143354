#include "fixture.hpp"

#include <atomic>
#include <cmath>
#include <unistd.h>

#include "rfk/digest.hpp"
#include "rfk/frame_io.hpp"
#include "rfk/image_codec.hpp"

namespace rfk::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter.fetch_add(1)));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

PointCloud random_cloud(Rng& rng, std::size_t n, double range) {
  PointCloud cloud;
  cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    LidarPoint p;
    p.x = static_cast<float>(rng.uniform(-range, range));
    p.y = static_cast<float>(rng.uniform(-range, range));
    p.z = static_cast<float>(rng.uniform(-2.0, 3.0));
    p.intensity = static_cast<float>(rng.uniform(0.0, 1.0));
    cloud.points.push_back(p);
  }
  return cloud;
}

Image random_image(Rng& rng, int width, int height) {
  Image image(width, height);
  for (auto& v : image.pixels) {
    v = static_cast<std::uint8_t>(rng.uniform_index(256));
  }
  return image;
}

Frame fixture_frame(std::size_t index, std::size_t points, int image_width, int image_height) {
  Rng rng(1000 + index);
  Frame frame;
  frame.frame_id = "frame_" + std::string(index < 10 ? "000" : index < 100 ? "00" : "0") + std::to_string(index);
  frame.timestamp = 1.5 + 0.5 * static_cast<double>(index);

  BoxAnnotation car;
  car.center = {10.0 + 0.5 * static_cast<double>(index), 2.0, 0.5};
  car.size = {4.0, 2.0, 1.6};
  car.yaw = 0.3;
  car.class_label = "car";
  car.instance_id = "car-1";
  BoxAnnotation ped;
  ped.center = {-6.0, -3.0, 0.9};
  ped.size = {0.8, 0.8, 1.8};
  ped.class_label = "pedestrian";
  ped.instance_id = "ped-1";
  frame.annotations = {car, ped};

  frame.lidar = random_cloud(rng, points, 30.0);
  // Points guaranteed inside each box.
  for (const BoxAnnotation& box : frame.annotations) {
    for (int k = 0; k < 16; ++k) {
      const double u = rng.uniform(-0.4, 0.4) * box.size.x();
      const double v = rng.uniform(-0.4, 0.4) * box.size.y();
      const double w = rng.uniform(-0.4, 0.4) * box.size.z();
      LidarPoint p;
      p.x = static_cast<float>(box.center.x() + u * std::cos(box.yaw) - v * std::sin(box.yaw));
      p.y = static_cast<float>(box.center.y() + u * std::sin(box.yaw) + v * std::cos(box.yaw));
      p.z = static_cast<float>(box.center.z() + w);
      p.intensity = 0.5f;
      frame.lidar.points.push_back(p);
    }
  }

  double yaw = 0.0;
  for (const std::string& id : fixture_cameras()) {
    CameraFrame cam;
    cam.camera_id = id;
    cam.intrinsics = {40.0, 40.0, image_width / 2.0, image_height / 2.0, image_width, image_height};
    cam.extrinsic = SE3Pose(Eigen::Quaterniond(Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ())),
                            Eigen::Vector3d(1.0, 0.0, 1.5));
    cam.image = random_image(rng, image_width, image_height);
    frame.cameras.emplace(id, std::move(cam));
    yaw += 2.0;
  }
  return frame;
}

std::vector<Frame> fixture_sequence(std::size_t n_frames) {
  std::vector<Frame> frames;
  for (std::size_t i = 0; i < n_frames; ++i) {
    frames.push_back(fixture_frame(i));
  }
  return frames;
}

fs::path write_fixture(const fs::path& dir, const std::vector<Frame>& frames, const std::string& sequence_id) {
  fs::create_directories(dir / "frames");
  SequenceManifest manifest;
  manifest.sequence_id = sequence_id;
  manifest.point_stride = 4;
  manifest.camera_inventory = fixture_cameras();
  for (const Frame& frame : frames) {
    write_frame(frame, dir / "frames");
    manifest.frames.push_back(frame_entry_for(frame, {}, "frames/"));
  }
  const fs::path path = dir / "manifest.json";
  write_manifest(manifest, path);
  return path;
}

std::map<std::string, std::string> tree_digests(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      out[fs::relative(entry.path(), dir).generic_string()] = sha256_hex(read_file_bytes(entry.path()));
    }
  }
  return out;
}

}  // namespace rfk::testing
