#include "rfk/pipeline.hpp"

#include <atomic>
#include <thread>

#include "rfk/augment.hpp"
#include "rfk/digest.hpp"
#include "rfk/frame_io.hpp"
#include "rfk/image_codec.hpp"

namespace rfk {

namespace fs = std::filesystem;

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view case_name, std::string_view frame_id) {
  std::string key = std::to_string(global_seed);
  key += '|';
  key += case_name;
  key += '|';
  key += frame_id;
  return fnv1a64(key);
}

void validate(const JobConfig& config) {
  if (config.worker_count < 1) {
    fail(ErrorCode::kConfigError, "worker_count must be >= 1");
  }
  if (config.output_dir.empty()) {
    fail(ErrorCode::kConfigError, "output directory is required");
  }
  const fs::path in_dir = fs::weakly_canonical(fs::absolute(config.input_manifest).parent_path());
  const fs::path out_dir = fs::weakly_canonical(fs::absolute(config.output_dir));
  if (in_dir == out_dir) {
    fail(ErrorCode::kConfigError, "output directory must differ from the input directory");
  }
  try {
    validate(config.spec);
  } catch (const Error& e) {
    fail(ErrorCode::kConfigError, e.what());
  }
}

Json to_json(const ProvenanceRecord& r) {
  Json j = {{"frame_id", r.frame_id},
            {"case", r.case_name},
            {"params", r.params},
            {"derived_seed", r.derived_seed},
            {"input_digest", r.input_digest},
            {"output_digest", r.output_digest}};
  if (r.stuck_source) {
    j["stuck_source"] = *r.stuck_source;
  }
  return j;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string input_digest(const SequenceManifest& m, const FrameEntry& e) {
  std::vector<std::pair<std::string, fs::path>> files;
  files.emplace_back(e.lidar_path, m.base_dir / e.lidar_path);
  for (const auto& [id, cam] : e.cameras) {
    if (!cam.missing) {
      files.emplace_back(*cam.image_path, m.base_dir / *cam.image_path);
    }
  }
  files.emplace_back(e.annotations_path, m.base_dir / e.annotations_path);
  return digest_files(files);
}

std::string output_digest(const fs::path& out_dir, const std::vector<fs::path>& written) {
  std::vector<std::pair<std::string, fs::path>> files;
  for (const fs::path& p : written) {
    files.emplace_back(fs::relative(p, out_dir).generic_string(), p);
  }
  return digest_files(files);
}

struct FrameOutcome {
  std::optional<ProvenanceRecord> record;
  std::optional<FrameEntry> entry;
  std::optional<FrameFailure> failure;
};

Json plan_to_json(const StuckPlan& plan) {
  Json sources = Json::object();
  for (const auto& [stuck, source] : plan.source_index) {
    sources[std::to_string(stuck)] = source;
  }
  return {{"stuck_indices", plan.stuck_indices}, {"source_index", std::move(sources)}};
}

}  // namespace

JobResult corrupt_dataset(const JobConfig& config) {
  validate(config);
  const SequenceManifest manifest = load_manifest(config.input_manifest);
  const std::string case_str(case_name(config.spec.kind));
  const Json params_json = params_to_json(config.spec.params);
  const WriteOptions write_options{config.materialize_missing};

  const fs::path frames_dir = config.output_dir / "frames";
  std::error_code ec;
  fs::create_directories(frames_dir, ec);
  if (ec) {
    fail(ErrorCode::kIoError, "cannot create " + frames_dir.string() + ": " + ec.message());
  }

  // Temporal plan is fixed before fan-out.
  std::optional<StuckPlan> plan;
  std::uint64_t plan_seed = 0;
  if (is_temporal(config.spec.kind)) {
    if (config.plan_override) {
      plan = *config.plan_override;
    } else {
      plan_seed = derive_seed(config.global_seed, case_str, manifest.sequence_id);
      Rng plan_rng(plan_seed);
      plan = select_stuck(manifest.frames.size(), std::get<StuckParams>(config.spec.params), plan_rng);
    }
    for (const auto& [stuck, source] : plan->source_index) {
      if (stuck >= manifest.frames.size() || source >= stuck) {
        fail(ErrorCode::kPlanOutOfRange, "stuck plan does not fit the sequence");
      }
    }
  }

  std::vector<FrameOutcome> outcomes(manifest.frames.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};

  const auto process = [&](std::size_t index) {
    const FrameEntry& entry = manifest.frames[index];
    FrameOutcome& outcome = outcomes[index];
    try {
      const std::uint64_t seed = derive_seed(config.global_seed, case_str, entry.frame_id);
      const Frame input = load_frame(manifest, entry.frame_id);
      Frame output;
      std::optional<std::string> stuck_source;
      if (plan) {
        const auto it = plan->source_index.find(index);
        if (it != plan->source_index.end()) {
          const Frame source = load_frame(manifest, manifest.frames[it->second].frame_id);
          output = config.spec.kind == CorruptionCase::kLidarStuck ? lidar_stuck_view(input, &source)
                                                                   : camera_stuck_view(input, &source);
          stuck_source = source.frame_id;
        } else {
          output = input;
        }
      } else {
        CorruptionSpec spec = config.spec;
        spec.seed = seed;
        output = apply_augmentation(input, spec);
      }

      const auto written = write_frame(output, frames_dir, write_options);
      ProvenanceRecord record;
      record.frame_id = entry.frame_id;
      record.case_name = case_str;
      record.params = params_json;
      record.derived_seed = seed;
      record.input_digest = input_digest(manifest, entry);
      record.output_digest = output_digest(config.output_dir, written);
      record.stuck_source = stuck_source;
      outcome.record = std::move(record);
      outcome.entry = frame_entry_for(output, write_options, "frames/");
    } catch (const Error& e) {
      outcome.failure = FrameFailure{entry.frame_id, e.code(), e.what()};
      if (config.fail_fast) {
        stop = true;
      }
    } catch (const std::exception& e) {
      outcome.failure = FrameFailure{entry.frame_id, ErrorCode::kIoError, e.what()};
      if (config.fail_fast) {
        stop = true;
      }
    }
  };

  const auto worker = [&] {
    for (std::size_t i = next++; i < outcomes.size() && !stop; i = next++) {
      process(i);
    }
  };
  const auto threads = static_cast<unsigned>(std::min<std::size_t>(config.worker_count, std::max<std::size_t>(1, outcomes.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  // Merge in frame order.
  JobResult result;
  result.output_dir = config.output_dir;
  SequenceManifest out_manifest;
  out_manifest.sequence_id = manifest.sequence_id;
  out_manifest.point_stride = manifest.point_stride;
  out_manifest.camera_inventory = manifest.camera_inventory;
  std::string provenance_text;
  for (FrameOutcome& o : outcomes) {
    if (o.failure) {
      result.failures.push_back(std::move(*o.failure));
    } else if (o.record) {
      provenance_text += to_json(*o.record).dump() + "\n";
      result.provenance.push_back(std::move(*o.record));
      out_manifest.frames.push_back(std::move(*o.entry));
    }
  }
  write_manifest(out_manifest, config.output_dir / "manifest.json");
  write_text(config.output_dir / "provenance.jsonl", provenance_text);

  Json failures = Json::array();
  for (const FrameFailure& f : result.failures) {
    failures.push_back({{"frame_id", f.frame_id}, {"error", to_string(f.code)}, {"message", f.message}});
  }
  Json report = {{"toolkit_version", RFK_VERSION_STRING},
                 {"sequence_id", manifest.sequence_id},
                 {"case", case_str},
                 {"params", params_json},
                 {"global_seed", config.global_seed},
                 {"frames_total", manifest.frames.size()},
                 {"frames_written", result.provenance.size()},
                 {"failures", std::move(failures)},
                 {"seed_derivation", "fnv1a64(\"<global_seed>|<case>|<frame_id>\")"}};
  if (plan) {
    const auto& sp = std::get<StuckParams>(config.spec.params);
    report["stuck_mode"] = to_string(sp.mode);
    report["stuck_ratio"] = sp.ratio;
    report["stuck_plan"] = plan_to_json(*plan);
    report["stuck_plan_seed"] = config.plan_override ? Json(nullptr) : Json(plan_seed);
  }
  write_text(config.output_dir / "report.json", report.dump(2) + "\n");
  result.report = std::move(report);
  return result;
}

std::vector<JobResult> sweep_dataset(const JobConfig& config) {
  validate(config);
  const fs::path parent = config.output_dir.parent_path();
  const std::string stem = config.output_dir.filename().string();
  std::vector<JobResult> results;

  if (is_temporal(config.spec.kind)) {
    const SequenceManifest manifest = load_manifest(config.input_manifest);
    if (manifest.frames.size() < 2) {
      fail(ErrorCode::kConfigError, "a stuck sweep needs at least two frames");
    }
    const std::string case_str(case_name(config.spec.kind));
    const auto& base = std::get<StuckParams>(config.spec.params);
    Rng sweep_rng(derive_seed(config.global_seed, case_str, manifest.sequence_id));
    for (SweepLevel& level : severity_sweep(manifest.frames.size(), base.modality, base.mode, sweep_rng)) {
      JobConfig job = config;
      job.spec.params = StuckParams{base.modality, level.ratio, base.mode};
      job.plan_override = std::move(level.plan);
      job.output_dir = parent / (stem + "_ratio_" + std::to_string(level.level * 10));
      JobResult r = corrupt_dataset(job);
      r.report["sweep_level"] = level.level;
      r.report["stuck_plan_seed"] = level.seed;
      write_text(job.output_dir / "report.json", r.report.dump(2) + "\n");
      results.push_back(std::move(r));
    }
    return results;
  }
  if (config.spec.kind == CorruptionCase::kLimitFov) {
    for (int deg : {0, 60, 90}) {
      JobConfig job = config;
      job.spec.params = FovParams::from_degrees(deg);
      job.output_dir = parent / (stem + "_theta0_" + std::to_string(deg));
      results.push_back(corrupt_dataset(job));
    }
    return results;
  }
  fail(ErrorCode::kConfigError,
       "sweep supports lidar_stuck, camera_stuck and fov; got " + std::string(case_name(config.spec.kind)));
}

}  // namespace rfk
