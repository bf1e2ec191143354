// rfk: turn a clean LiDAR + camera sequence into sensor-failure benchmarks.
//
// Exit codes: 0 success, 2 config error, 3 data error, 4 partial failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rfk/augment.hpp"
#include "rfk/frame_io.hpp"
#include "rfk/metrics.hpp"
#include "rfk/pipeline.hpp"
#include "rfk/preview.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitPartial = 4;

struct CaseOptions {
  std::string case_name;
  double theta0_deg = 90.0;
  double drop_prob = 0.5;
  std::string missing_mode = "keep_front_only";
  std::vector<std::string> missing_cameras;
  std::string front_camera = "CAM_FRONT";
  std::string occlusion_spec;
  std::vector<std::string> occlusion_cameras;
  std::string calib_rot_deg = "0:5";
  std::string calib_trans_cm = "1:5";
  std::string stuck_modality;
  double stuck_ratio = 0.5;
  std::string stuck_mode = "discrete";
};

struct JobOptions {
  std::string manifest;
  std::string out;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool fail_fast = false;
  bool materialize_missing = false;
  bool sweep = false;
};

void add_case_options(CLI::App* cmd, CaseOptions& c) {
  cmd->add_option("--case", c.case_name,
                  "lidar_stuck | fov | object_failure | camera_stuck | missing_camera | occlusion | calib | stuck")
      ->required();
  cmd->add_option("--theta0-deg", c.theta0_deg, "fov: visible half-angle (benchmark presets 0, 60, 90)")
      ->check(CLI::Range(0.0, 180.0));
  cmd->add_option("--drop-prob", c.drop_prob, "object_failure: per-box drop probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--missing-mode", c.missing_mode, "missing_camera: drop_one | keep_front_only | drop_set");
  cmd->add_option("--missing-cameras", c.missing_cameras, "missing_camera: camera ids for drop_one/drop_set")
      ->delimiter(',');
  cmd->add_option("--front-camera", c.front_camera, "missing_camera: camera kept by keep_front_only");
  cmd->add_option("--occlusion-spec", c.occlusion_spec, "occlusion: JSON overriding the mask spec")
      ->check(CLI::ExistingFile);
  cmd->add_option("--occlusion-cameras", c.occlusion_cameras, "occlusion: cameras to occlude (default all)")
      ->delimiter(',');
  cmd->add_option("--calib-rot-deg", c.calib_rot_deg, "calib: rotation angle range, min:max degrees");
  cmd->add_option("--calib-trans-cm", c.calib_trans_cm, "calib: translation range, min:max centimetres");
  cmd->add_option("--stuck-modality", c.stuck_modality, "stuck: lidar | camera");
  cmd->add_option("--stuck-ratio", c.stuck_ratio, "stuck: fraction of frames stuck")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--stuck-mode", c.stuck_mode, "stuck: discrete | consecutive");
}

void add_job_options(CLI::App* cmd, JobOptions& j) {
  cmd->add_option("--manifest", j.manifest, "input manifest JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", j.out, "output directory")->required();
  cmd->add_option("--seed", j.seed, "global seed");
  cmd->add_option("--workers", j.workers, "worker threads")->envname("RFK_WORKERS")->check(CLI::PositiveNumber);
  cmd->add_flag("--fail-fast", j.fail_fast, "stop at the first failing frame");
  cmd->add_flag("--materialize-missing", j.materialize_missing, "write black PNGs for missing cameras");
}

std::pair<double, double> parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const double v = std::stod(text);
      return {v, v};
    }
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    rfk::fail(rfk::ErrorCode::kConfigError, std::string(flag) + " expects min:max, got '" + text + "'");
  }
}

rfk::CorruptionSpec build_spec(const CaseOptions& c) {
  if (c.case_name.find_first_of(",+ ") != std::string::npos) {
    rfk::fail(rfk::ErrorCode::kConfigError, "one case per job; combining cases is not supported");
  }
  std::string name = c.case_name;
  if (name == "stuck") {
    if (c.stuck_modality.empty()) {
      rfk::fail(rfk::ErrorCode::kConfigError, "--case stuck needs --stuck-modality lidar|camera");
    }
    name = c.stuck_modality + "_stuck";
  }
  const auto kind = rfk::parse_case(name);
  if (!kind) {
    rfk::fail(rfk::ErrorCode::kConfigError, "unknown case '" + c.case_name + "'");
  }

  rfk::CorruptionSpec spec;
  spec.kind = *kind;
  switch (*kind) {
    case rfk::CorruptionCase::kLimitFov:
      spec.params = rfk::FovParams::from_degrees(c.theta0_deg);
      break;
    case rfk::CorruptionCase::kObjectFailure:
      spec.params = rfk::ObjectFailureParams{c.drop_prob};
      break;
    case rfk::CorruptionCase::kLidarStuck:
    case rfk::CorruptionCase::kCameraStuck: {
      const rfk::Modality modality = rfk::affected_modality(*kind);
      if (!c.stuck_modality.empty() && rfk::parse_modality(c.stuck_modality) != modality) {
        rfk::fail(rfk::ErrorCode::kConfigError, "--stuck-modality contradicts --case");
      }
      spec.params = rfk::StuckParams{modality, c.stuck_ratio, rfk::parse_stuck_mode(c.stuck_mode)};
      break;
    }
    case rfk::CorruptionCase::kMissingCamera: {
      const auto mode = rfk::parse_missing_mode(c.missing_mode);
      if (mode == rfk::MissingParams::Mode::kKeepFrontOnly) {
        spec.params = rfk::MissingParams::keep_front_only(c.front_camera);
      } else {
        spec.params = rfk::MissingParams{mode, c.missing_cameras};
      }
      break;
    }
    case rfk::CorruptionCase::kLensOcclusion: {
      rfk::OcclusionParams params;
      if (!c.occlusion_spec.empty()) {
        std::ifstream in(c.occlusion_spec);
        rfk::Json j;
        try {
          j = rfk::Json::parse(in);
        } catch (const rfk::Json::parse_error& e) {
          rfk::fail(rfk::ErrorCode::kConfigError, c.occlusion_spec + ": " + e.what());
        }
        params.mask = rfk::mask_spec_from_json(j);
      }
      params.cameras = c.occlusion_cameras;
      spec.params = params;
      break;
    }
    case rfk::CorruptionCase::kSpatialMisalign: {
      const auto [rot_lo, rot_hi] = parse_range(c.calib_rot_deg, "--calib-rot-deg");
      const auto [tr_lo, tr_hi] = parse_range(c.calib_trans_cm, "--calib-trans-cm");
      spec.params = rfk::PerturbationRanges{rfk::deg_to_rad(rot_lo), rfk::deg_to_rad(rot_hi), tr_lo * 0.01,
                                            tr_hi * 0.01};
      break;
    }
  }
  try {
    rfk::validate(spec);
  } catch (const rfk::Error& e) {
    rfk::fail(rfk::ErrorCode::kConfigError, e.what());
  }
  return spec;
}

rfk::JobConfig build_job(const JobOptions& j, const CaseOptions& c) {
  rfk::JobConfig config;
  config.input_manifest = j.manifest;
  config.output_dir = j.out;
  config.spec = build_spec(c);
  config.global_seed = j.seed;
  config.worker_count = j.workers;
  config.fail_fast = j.fail_fast;
  config.materialize_missing = j.materialize_missing;
  return config;
}

int summarize(const std::vector<rfk::JobResult>& results) {
  int status = kExitOk;
  for (const rfk::JobResult& r : results) {
    std::cout << r.output_dir.string() << ": " << r.provenance.size() << " frames written, " << r.failures.size()
              << " failed\n";
    for (const rfk::FrameFailure& f : r.failures) {
      std::cerr << "  " << f.frame_id << ": " << f.message << "\n";
    }
    if (!r.ok()) {
      status = kExitPartial;
    }
  }
  return status;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    rfk::fail(rfk::ErrorCode::kIoError, "cannot write " + path);
  }
  out << text;
}

rfk::Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    rfk::fail(rfk::ErrorCode::kMissingFile, path);
  }
  try {
    return rfk::Json::parse(in);
  } catch (const rfk::Json::parse_error& e) {
    rfk::fail(rfk::ErrorCode::kSchemaViolation, path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rfk - sensor-failure robustness toolkit for LiDAR + camera datasets"};
  app.set_version_flag("--version", RFK_VERSION_STRING);
  app.require_subcommand(1);

  JobOptions job;
  CaseOptions case_opts;
  auto* corrupt = app.add_subcommand("corrupt", "apply one corruption case to a whole sequence");
  add_job_options(corrupt, job);
  add_case_options(corrupt, case_opts);
  corrupt->add_flag("--sweep", job.sweep, "emit every severity level into sibling directories");

  JobOptions sweep_job;
  CaseOptions sweep_case;
  auto* sweep = app.add_subcommand("sweep", "run all severity levels of a case (stuck ratios or fov presets)");
  add_job_options(sweep, sweep_job);
  add_case_options(sweep, sweep_case);

  std::string grid_path, report_json, report_md;
  auto* report = app.add_subcommand("report", "score grid JSON -> robustness report");
  report->add_option("--grid", grid_path, "score grid JSON")->required()->check(CLI::ExistingFile);
  report->add_option("--out", report_json, "report JSON path (default: stdout)");
  report->add_option("--markdown", report_md, "Markdown table path");

  std::string predictions_path, eval_manifest, eval_out;
  std::vector<double> thresholds = rfk::default_bev_thresholds();
  auto* evaluate = app.add_subcommand("evaluate", "BEV centre-distance mAP of predictions against a manifest");
  evaluate->add_option("--predictions", predictions_path, "predictions JSONL")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--manifest", eval_manifest, "ground-truth manifest")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--thresholds", thresholds, "distance thresholds in metres")->delimiter(',');
  evaluate->add_option("--out", eval_out, "AP table JSON path (default: stdout)");

  std::string preview_manifest, preview_frame, preview_out;
  auto* preview = app.add_subcommand("preview", "render a BEV + camera composite PNG of one frame");
  preview->add_option("--manifest", preview_manifest, "manifest JSON")->required()->check(CLI::ExistingFile);
  preview->add_option("--frame", preview_frame, "frame id (default: first frame)");
  preview->add_option("--out", preview_out, "output PNG")->required();

  std::string policy_path;
  std::size_t sample_count = 10;
  std::uint64_t sample_seed = 0;
  auto* augment = app.add_subcommand("augment-sample", "print a stream of sampled augmentation specs as JSONL");
  augment->add_option("--policy", policy_path, "policy JSON (default: built-in table9 policy)")
      ->check(CLI::ExistingFile);
  augment->add_option("--count", sample_count, "number of draws");
  augment->add_option("--seed", sample_seed, "sampler seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*corrupt) {
      const rfk::JobConfig config = build_job(job, case_opts);
      if (job.sweep) {
        return summarize(rfk::sweep_dataset(config));
      }
      return summarize({rfk::corrupt_dataset(config)});
    }
    if (*sweep) {
      return summarize(rfk::sweep_dataset(build_job(sweep_job, sweep_case)));
    }
    if (*report) {
      const rfk::Json grid_json = read_json(grid_path);
      const rfk::RobustnessGrid grid = rfk::grid_from_json(grid_json);
      const rfk::RobustnessReport r = rfk::build_report(grid, grid_json.value("seeds", rfk::Json::object()),
                                                        grid_json.value("params", rfk::Json::object()));
      write_or_print(report_json, rfk::to_json(r).dump(2) + "\n");
      if (!report_md.empty()) {
        write_or_print(report_md, rfk::to_markdown(r));
      }
      return kExitOk;
    }
    if (*evaluate) {
      const rfk::SequenceManifest manifest = rfk::load_manifest(eval_manifest);
      rfk::GroundTruth gt;
      for (const rfk::FrameEntry& e : manifest.frames) {
        gt[e.frame_id] = rfk::load_annotations(manifest, e.frame_id);
      }
      std::vector<rfk::DetectionRecord> predictions;
      std::ifstream in(predictions_path);
      std::string line;
      while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
          predictions.push_back(rfk::detection_record_from_json(rfk::Json::parse(line)));
        } catch (const rfk::Json::parse_error& e) {
          rfk::fail(rfk::ErrorCode::kSchemaViolation, predictions_path + ": " + e.what());
        }
      }
      const rfk::ApTable table = rfk::evaluate_bev_map(predictions, gt, thresholds);
      write_or_print(eval_out, rfk::to_json(table).dump(2) + "\n");
      return kExitOk;
    }
    if (*preview) {
      const rfk::SequenceManifest manifest = rfk::load_manifest(preview_manifest);
      if (manifest.frames.empty()) {
        rfk::fail(rfk::ErrorCode::kSchemaViolation, "manifest has no frames");
      }
      const std::string id = preview_frame.empty() ? manifest.frames.front().frame_id : preview_frame;
      rfk::render_preview(rfk::load_frame(manifest, id), preview_out);
      return kExitOk;
    }
    if (*augment) {
      const rfk::AugmentPolicy policy =
          policy_path.empty() ? rfk::AugmentPolicy::table9() : rfk::load_policy(policy_path);
      rfk::Rng rng(sample_seed);
      for (std::size_t i = 0; i < sample_count; ++i) {
        const auto spec = rfk::sample_augmentation(policy, rng);
        std::cout << (spec ? rfk::to_json(*spec).dump() : "null") << "\n";
      }
      return kExitOk;
    }
  } catch (const rfk::Error& e) {
    std::cerr << "rfk: " << e.what() << "\n";
    return rfk::is_config_error(e.code()) ? kExitConfig : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "rfk: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}
