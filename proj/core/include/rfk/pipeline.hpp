#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rfk/corruption_spec.hpp"
#include "rfk/error.hpp"
#include "rfk/json_codec.hpp"

namespace rfk {

/// FNV-1a 64 over "<global_seed decimal>|<case>|<frame_id>". Frozen: changing
/// it changes every generated benchmark.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view case_name, std::string_view frame_id);

struct JobConfig {
  std::filesystem::path input_manifest;
  std::filesystem::path output_dir;
  /// Case and parameters; the seed field is ignored (seeds derive per frame).
  CorruptionSpec spec;
  std::uint64_t global_seed = 0;
  unsigned worker_count = 1;
  bool materialize_missing = false;
  bool fail_fast = false;
  /// Temporal cases only: use this plan instead of drawing one.
  std::optional<StuckPlan> plan_override;
};

void validate(const JobConfig& config);

struct ProvenanceRecord {
  std::string frame_id;
  std::string case_name;
  Json params;
  std::uint64_t derived_seed = 0;
  std::string input_digest;
  std::string output_digest;
  std::optional<std::string> stuck_source;
};

Json to_json(const ProvenanceRecord& record);

struct FrameFailure {
  std::string frame_id;
  ErrorCode code = ErrorCode::kIoError;
  std::string message;
};

struct JobResult {
  Json report;
  std::vector<ProvenanceRecord> provenance;
  std::vector<FrameFailure> failures;
  std::filesystem::path output_dir;

  bool ok() const { return failures.empty(); }
};

/// Corrupts every frame of the manifest into output_dir:
///   manifest.json, frames/<id>.*, provenance.jsonl, report.json.
/// Output bytes depend only on (manifest, config minus worker_count).
/// Per-frame errors are collected (or stop the job with fail_fast); config
/// and manifest errors throw.
JobResult corrupt_dataset(const JobConfig& config);

/// Runs one job per severity level into sibling directories of
/// config.output_dir: the nine stuck ratios for temporal cases, or theta0 in
/// {0, 60, 90} deg for fov. Other cases are a config error.
std::vector<JobResult> sweep_dataset(const JobConfig& config);

}  // namespace rfk
