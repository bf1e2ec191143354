#include <benchmark/benchmark.h>

#include "rfk/camera_corruption.hpp"
#include "rfk/image_codec.hpp"
#include "rfk/lidar_corruption.hpp"
#include "rfk/metrics.hpp"

namespace {

rfk::PointCloud make_cloud(std::size_t n) {
  rfk::Rng rng(1);
  rfk::PointCloud cloud;
  cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    cloud.points.push_back({static_cast<float>(rng.uniform(-60, 60)), static_cast<float>(rng.uniform(-60, 60)),
                            static_cast<float>(rng.uniform(-2, 3)), static_cast<float>(rng.uniform01()), 0});
  }
  return cloud;
}

std::vector<rfk::BoxAnnotation> make_boxes(std::size_t n) {
  rfk::Rng rng(2);
  std::vector<rfk::BoxAnnotation> boxes(n);
  for (auto& b : boxes) {
    b.center = {rng.uniform(-50, 50), rng.uniform(-50, 50), 0.5};
    b.size = {4.5, 2.0, 1.7};
    b.yaw = rng.uniform(-3, 3);
    b.class_label = "car";
  }
  return boxes;
}

rfk::Image make_image(int w, int h) {
  rfk::Rng rng(3);
  rfk::Image img(w, h);
  for (auto& v : img.pixels) v = static_cast<std::uint8_t>(rng.uniform_index(256));
  return img;
}

// A nuScenes sweep is about 35k points.
void BM_LimitFov(benchmark::State& state) {
  const auto cloud = make_cloud(static_cast<std::size_t>(state.range(0)));
  const auto params = rfk::FovParams::from_degrees(60);
  for (auto _ : state) benchmark::DoNotOptimize(rfk::limit_fov(cloud, params));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LimitFov)->Arg(35000)->Arg(120000);

void BM_ObjectFailure(benchmark::State& state) {
  const auto cloud = make_cloud(35000);
  const auto boxes = make_boxes(static_cast<std::size_t>(state.range(0)));
  const rfk::ObjectFailureParams params{0.5};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    rfk::Rng rng(seed++);
    benchmark::DoNotOptimize(rfk::object_failure(cloud, boxes, params, rng));
  }
}
BENCHMARK(BM_ObjectFailure)->Arg(10)->Arg(50);

void BM_GenerateMask(benchmark::State& state) {
  const rfk::OcclusionMaskSpec spec;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    rfk::Rng rng(seed++);
    benchmark::DoNotOptimize(rfk::generate_mask(spec, 900, 1600, rng));
  }
}
BENCHMARK(BM_GenerateMask)->Unit(benchmark::kMillisecond);

void BM_ApplyOcclusion(benchmark::State& state) {
  const auto img = make_image(1600, 900);
  rfk::Rng rng(4);
  const auto mask = rfk::generate_mask(rfk::OcclusionMaskSpec{}, 900, 1600, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rfk::apply_occlusion(img, mask));
}
BENCHMARK(BM_ApplyOcclusion)->Unit(benchmark::kMillisecond);

void BM_EncodePng(benchmark::State& state) {
  const auto img = make_image(1600, 900);
  for (auto _ : state) benchmark::DoNotOptimize(rfk::encode_png(img));
}
BENCHMARK(BM_EncodePng)->Unit(benchmark::kMillisecond);

void BM_EvaluateBevMap(benchmark::State& state) {
  rfk::Rng rng(5);
  rfk::GroundTruth gt;
  std::vector<rfk::DetectionRecord> preds;
  for (int f = 0; f < 100; ++f) {
    const std::string id = "f" + std::to_string(f);
    rfk::DetectionRecord rec{id, {}};
    for (const auto& b : make_boxes(30)) {
      gt[id].push_back(b);
      rfk::DetectionBox d;
      d.center = b.center + Eigen::Vector3d(rng.uniform(-1, 1), rng.uniform(-1, 1), 0);
      d.class_label = b.class_label;
      d.score = rng.uniform01();
      rec.boxes.push_back(d);
    }
    preds.push_back(std::move(rec));
  }
  for (auto _ : state) benchmark::DoNotOptimize(rfk::evaluate_bev_map(preds, gt));
}
BENCHMARK(BM_EvaluateBevMap)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
