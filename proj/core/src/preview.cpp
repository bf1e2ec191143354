#include "rfk/preview.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string_view>

#include "rfk/error.hpp"
#include "rfk/image_codec.hpp"

namespace rfk {

namespace {

// 5x7 bitmap glyphs, one byte per row, bit 4 = leftmost column.
struct Glyph {
  char c;
  std::uint8_t rows[7];
};

constexpr Glyph kGlyphs[] = {
    {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}}, {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
    {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}}, {'D', {0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}}, {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
    {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}}, {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}}, {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
    {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}}, {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
    {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}}, {'N', {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11}},
    {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}}, {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
    {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}}, {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
    {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}}, {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}}, {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
    {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}}, {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}},
    {'Y', {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04}}, {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}},
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}}, {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}}, {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}}, {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}}, {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}}, {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'_', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1F}}, {'-', {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00}},
};

const Glyph* find_glyph(char c) {
  const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const Glyph& g : kGlyphs) {
    if (g.c == upper) {
      return &g;
    }
  }
  return nullptr;
}

void put(Image& img, int x, int y, const std::array<std::uint8_t, 3>& color) {
  if (x < 0 || y < 0 || x >= img.width || y >= img.height) {
    return;
  }
  std::uint8_t* px = img.at(x, y);
  px[0] = color[0];
  px[1] = color[1];
  px[2] = color[2];
}

void draw_text(Image& img, int x, int y, std::string_view text, const std::array<std::uint8_t, 3>& color,
               int scale = 2) {
  for (char c : text) {
    if (const Glyph* g = find_glyph(c)) {
      for (int row = 0; row < 7; ++row) {
        for (int col = 0; col < 5; ++col) {
          if (g->rows[row] & (0x10 >> col)) {
            for (int sy = 0; sy < scale; ++sy) {
              for (int sx = 0; sx < scale; ++sx) {
                put(img, x + col * scale + sx, y + row * scale + sy, color);
              }
            }
          }
        }
      }
    }
    x += 6 * scale;
  }
}

void fill_rect(Image& img, int x0, int y0, int w, int h, const std::array<std::uint8_t, 3>& color) {
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) {
      put(img, x, y, color);
    }
  }
}

}  // namespace

std::pair<int, int> PreviewLayout::tile_origin(std::size_t index) const {
  const int col = static_cast<int>(index) % columns;
  const int row = static_cast<int>(index) / columns;
  return {bev_size + margin + col * (tile_width + margin), margin + row * (tile_height + margin)};
}

PreviewLayout preview_layout(const Frame& frame, const PreviewOptions& options) {
  if (!(options.range_m > 0.0) || !(options.meters_per_pixel > 0.0) || options.thumbnail_width <= 0 ||
      options.thumbnail_columns <= 0) {
    fail(ErrorCode::kInvalidArgument, "preview options must be positive");
  }
  PreviewLayout layout;
  layout.bev_size = static_cast<int>(std::lround(2.0 * options.range_m / options.meters_per_pixel));
  layout.margin = 8;
  layout.columns = options.thumbnail_columns;
  layout.tile_width = options.thumbnail_width;
  double aspect = 9.0 / 16.0;
  for (const auto& [id, cam] : frame.cameras) {
    aspect = static_cast<double>(cam.intrinsics.image_height) / cam.intrinsics.image_width;
    break;
  }
  layout.tile_height = std::max(1, static_cast<int>(std::lround(layout.tile_width * aspect)));
  const int n = static_cast<int>(frame.cameras.size());
  const int rows = (n + layout.columns - 1) / layout.columns;
  layout.width = layout.bev_size + (n > 0 ? layout.margin + layout.columns * (layout.tile_width + layout.margin) : 0);
  layout.height = std::max(layout.bev_size, layout.margin + rows * (layout.tile_height + layout.margin));
  return layout;
}

Image render_preview_image(const Frame& frame, const PreviewOptions& options) {
  const PreviewLayout layout = preview_layout(frame, options);
  Image canvas(layout.width, layout.height, 24);

  // BEV panel: black background, axes through the ego origin.
  const int size = layout.bev_size;
  const int centre = size / 2;
  fill_rect(canvas, 0, 0, size, size, {0, 0, 0});
  for (int i = 0; i < size; ++i) {
    put(canvas, i, centre, kPreviewAxisColor);
    put(canvas, centre, i, kPreviewAxisColor);
  }
  for (int i = 0; i < size; i += static_cast<int>(std::lround(10.0 / options.meters_per_pixel))) {
    for (int t = -3; t <= 3; ++t) {  // 10 m ticks
      put(canvas, i, centre + t, kPreviewAxisColor);
      put(canvas, centre + t, i, kPreviewAxisColor);
    }
  }
  for (const LidarPoint& p : frame.lidar.points) {
    const double col = centre + p.x / options.meters_per_pixel;
    const double row = centre - p.y / options.meters_per_pixel;
    const auto x = static_cast<int>(std::floor(col));
    const auto y = static_cast<int>(std::floor(row));
    put(canvas, x, y, kPreviewPointColor);
  }

  std::size_t index = 0;
  for (const auto& [id, cam] : frame.cameras) {
    const auto [ox, oy] = layout.tile_origin(index++);
    if (!cam.image) {
      fill_rect(canvas, ox, oy, layout.tile_width, layout.tile_height, kPreviewMissingColor);
      draw_text(canvas, ox + 6, oy + 6, id, {0, 0, 0});
      draw_text(canvas, ox + 6, oy + 26, "MISSING", {0, 0, 0});
      continue;
    }
    const Image& src = *cam.image;
    for (int ty = 0; ty < layout.tile_height; ++ty) {
      const int sy = std::min(src.height - 1, static_cast<int>((static_cast<long>(ty) * src.height) / layout.tile_height));
      for (int tx = 0; tx < layout.tile_width; ++tx) {
        const int sx = std::min(src.width - 1, static_cast<int>((static_cast<long>(tx) * src.width) / layout.tile_width));
        const std::uint8_t* s = src.at(sx, sy);
        put(canvas, ox + tx, oy + ty, {s[0], s[1], s[2]});
      }
    }
    draw_text(canvas, ox + 4, oy + layout.tile_height - 18, id, {255, 255, 0});
  }
  return canvas;
}

void render_preview(const Frame& frame, const std::filesystem::path& out_path, const PreviewOptions& options) {
  write_png(render_preview_image(frame, options), out_path);
}

}  // namespace rfk
