#pragma once

#include <filesystem>

#include "rfk/types.hpp"

namespace rfk {

struct PreviewOptions {
  double range_m = 50.0;          // BEV half-extent
  double meters_per_pixel = 0.1;
  int thumbnail_width = 320;
  int thumbnail_columns = 2;
};

inline constexpr std::array<std::uint8_t, 3> kPreviewPointColor = {255, 255, 255};
inline constexpr std::array<std::uint8_t, 3> kPreviewAxisColor = {90, 90, 90};
inline constexpr std::array<std::uint8_t, 3> kPreviewMissingColor = {128, 128, 128};

/// Composite of a BEV scatter (x right, y up, ego at the panel centre) and
/// camera thumbnails laid out to its right in camera_id order. Missing
/// cameras become labelled gray tiles.
Image render_preview_image(const Frame& frame, const PreviewOptions& options = {});
void render_preview(const Frame& frame, const std::filesystem::path& out_path, const PreviewOptions& options = {});

/// Geometry of the layout, for callers that need to locate a tile.
struct PreviewLayout {
  int bev_size = 0;
  int tile_width = 0;
  int tile_height = 0;
  int columns = 0;
  int margin = 0;
  int width = 0;
  int height = 0;

  /// Top-left corner of the i-th camera tile.
  std::pair<int, int> tile_origin(std::size_t index) const;
};

PreviewLayout preview_layout(const Frame& frame, const PreviewOptions& options = {});

}  // namespace rfk
