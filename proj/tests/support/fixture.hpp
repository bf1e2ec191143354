#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rfk/rng.hpp"
#include "rfk/types.hpp"

namespace rfk::testing {

/// Removes itself on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "rfk");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

 private:
  std::filesystem::path path_;
};

inline const std::vector<std::string>& fixture_cameras() {
  static const std::vector<std::string> kCameras = {"CAM_BACK", "CAM_FRONT", "CAM_FRONT_LEFT"};
  return kCameras;
}

PointCloud random_cloud(Rng& rng, std::size_t n, double range = 50.0);
Image random_image(Rng& rng, int width, int height);

/// Two labelled boxes in front of the ego vehicle with points inside each.
Frame fixture_frame(std::size_t index, std::size_t points = 512, int image_width = 48, int image_height = 32);
std::vector<Frame> fixture_sequence(std::size_t n_frames);

/// Writes the frames under dir/frames and a manifest at dir/manifest.json,
/// returning the manifest path.
std::filesystem::path write_fixture(const std::filesystem::path& dir, const std::vector<Frame>& frames,
                                    const std::string& sequence_id = "fixture-seq");

/// Relative path -> SHA-256 of every regular file under dir.
std::map<std::string, std::string> tree_digests(const std::filesystem::path& dir);

}  // namespace rfk::testing
