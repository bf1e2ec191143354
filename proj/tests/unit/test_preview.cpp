#include <gtest/gtest.h>

#include "fixture.hpp"
#include "rfk/error.hpp"
#include "rfk/camera_corruption.hpp"
#include "rfk/image_codec.hpp"
#include "rfk/lidar_corruption.hpp"
#include "rfk/preview.hpp"

namespace {

using Color = std::array<std::uint8_t, 3>;

Color pixel(const rfk::Image& img, int x, int y) {
  const std::uint8_t* p = img.at(x, y);
  return {p[0], p[1], p[2]};
}

int count_in(const rfk::Image& img, int x0, int y0, int w, int h, const Color& c) {
  int n = 0;
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) n += pixel(img, x, y) == c;
  }
  return n;
}

TEST(Preview, EmptyCloudGivesBlankPanelWithAxes) {
  rfk::Frame frame = rfk::testing::fixture_frame(0);
  frame.lidar.points.clear();
  const auto layout = rfk::preview_layout(frame);
  const auto img = rfk::render_preview_image(frame);
  EXPECT_EQ(img.width, layout.width);
  EXPECT_EQ(img.height, layout.height);
  const int size = layout.bev_size;
  EXPECT_EQ(count_in(img, 0, 0, size, size, rfk::kPreviewPointColor), 0);
  EXPECT_GT(count_in(img, 0, 0, size, size, rfk::kPreviewAxisColor), 2 * size - 10);
  EXPECT_EQ(pixel(img, size / 2, 3), rfk::kPreviewAxisColor);
  EXPECT_EQ(pixel(img, 3, 3), (Color{0, 0, 0}));
}

TEST(Preview, FovLimitedCloudLeavesRearHalfEmpty) {
  const rfk::Frame frame = rfk::limit_fov(rfk::testing::fixture_frame(1, 4000), rfk::FovParams::from_degrees(90));
  const auto layout = rfk::preview_layout(frame);
  const auto img = rfk::render_preview_image(frame);
  const int size = layout.bev_size;
  // Forward (+x) is to the right of the ego column.
  EXPECT_EQ(count_in(img, 0, 0, size / 2, size, rfk::kPreviewPointColor), 0);
  EXPECT_GT(count_in(img, size / 2 + 1, 0, size / 2 - 1, size, rfk::kPreviewPointColor), 100);
}

TEST(Preview, PointLandsAtExpectedPixel) {
  rfk::Frame frame = rfk::testing::fixture_frame(0);
  frame.lidar.points = {{10.05f, -5.05f, 0.0f, 1.0f}};
  const auto img = rfk::render_preview_image(frame);
  const int centre = rfk::preview_layout(frame).bev_size / 2;
  EXPECT_EQ(pixel(img, centre + 100, centre + 50), rfk::kPreviewPointColor);
}

TEST(Preview, MissingCameraIsGrayTile) {
  const rfk::Frame frame = rfk::drop_cameras(rfk::testing::fixture_frame(0), rfk::MissingParams::drop_one("CAM_BACK"));
  const auto layout = rfk::preview_layout(frame);
  const auto img = rfk::render_preview_image(frame);
  const auto [ox, oy] = layout.tile_origin(0);  // CAM_BACK sorts first
  const int area = layout.tile_width * layout.tile_height;
  const int gray = count_in(img, ox, oy, layout.tile_width, layout.tile_height, rfk::kPreviewMissingColor);
  EXPECT_GT(gray, area * 9 / 10);
  EXPECT_LT(gray, area);  // the label is drawn on top
  const auto [ox1, oy1] = layout.tile_origin(1);
  EXPECT_LT(count_in(img, ox1, oy1, layout.tile_width, layout.tile_height, rfk::kPreviewMissingColor), area / 10);
}

TEST(Preview, OccludedCameraShowsMaskColour) {
  rfk::OcclusionParams params;
  params.cameras = {"CAM_FRONT"};
  params.mask.opacity_min = params.mask.opacity_max = 1.0;
  params.mask.jitter_translation_max = 0.0;
  params.mask.blob_radius_min = 20.0;
  params.mask.blob_radius_max = 40.0;
  rfk::Rng rng(2);
  const rfk::Frame clean = rfk::testing::fixture_frame(0);
  const rfk::Frame frame = rfk::occlude_cameras(clean, params, rng);
  const auto layout = rfk::preview_layout(frame);
  const auto [ox, oy] = layout.tile_origin(1);
  const int w = layout.tile_width, h = layout.tile_height;
  EXPECT_GT(count_in(rfk::render_preview_image(frame), ox, oy, w, h, params.mask.color), 0);
  EXPECT_EQ(count_in(rfk::render_preview_image(clean), ox, oy, w, h, params.mask.color), 0);
}

TEST(Preview, WritesPngAndRejectsBadOptions) {
  rfk::testing::TempDir dir;
  const rfk::Frame frame = rfk::testing::fixture_frame(0);
  rfk::PreviewOptions opts;
  opts.range_m = 10.0;
  rfk::render_preview(frame, dir / "p.png", opts);
  EXPECT_EQ(rfk::read_image(dir / "p.png"), rfk::render_preview_image(frame, opts));
  opts.meters_per_pixel = 0.0;
  EXPECT_THROW(rfk::render_preview_image(frame, opts), rfk::Error);
}

}  // namespace
