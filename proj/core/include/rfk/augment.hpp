#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include "rfk/corruption_spec.hpp"
#include "rfk/json_codec.hpp"

namespace rfk {

/// Per-case severity distributions used when a case is picked for training.
struct SeverityTemplates {
  std::vector<double> theta0_deg_choices = {60.0, 90.0};
  ObjectFailureParams object_failure{0.5};
  StuckMode stuck_mode = StuckMode::kDiscrete;
  std::vector<MissingParams> missing_choices = default_missing_choices();
  OcclusionParams occlusion{};
  PerturbationRanges calib = PerturbationRanges::benchmark_default();

  static std::vector<MissingParams> default_missing_choices();
};

/// Two-stage sampler: clean with probability 1 - p_a, otherwise one case
/// drawn from p_o.
struct AugmentPolicy {
  double p_a = 0.5;
  std::map<CorruptionCase, double> p_o;
  SeverityTemplates templates;

  /// Camera stuck, missing camera and calibration at 1/3 each; the rest 0.
  static AugmentPolicy table9(double p_a = 0.5);
};

void validate(const AugmentPolicy& policy);

AugmentPolicy policy_from_json(const Json& j);
AugmentPolicy load_policy(const std::filesystem::path& path);
Json to_json(const AugmentPolicy& policy);

/// Draw order: stage-one uniform; if augmenting, case uniform, severity
/// draws for that case, then the spec seed (one next_u64()).
std::optional<CorruptionSpec> sample_augmentation(const AugmentPolicy& policy, Rng& rng);

/// Dispatches to the corruption module for spec.kind with Rng(spec.seed).
/// Temporal cases stick onto `previous`; with no previous frame they return
/// the frame unchanged.
Frame apply_augmentation(const Frame& frame, const CorruptionSpec& spec, const Frame* previous = nullptr);

}  // namespace rfk
