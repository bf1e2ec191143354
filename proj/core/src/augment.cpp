#include "rfk/augment.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "rfk/error.hpp"

namespace rfk {

std::vector<MissingParams> SeverityTemplates::default_missing_choices() {
  std::vector<MissingParams> choices;
  for (const char* id : {"CAM_FRONT", "CAM_FRONT_RIGHT", "CAM_FRONT_LEFT", "CAM_BACK", "CAM_BACK_LEFT",
                         "CAM_BACK_RIGHT"}) {
    choices.push_back(MissingParams::drop_one(id));
  }
  choices.push_back(MissingParams::keep_front_only());
  return choices;
}

AugmentPolicy AugmentPolicy::table9(double p_a) {
  AugmentPolicy policy;
  policy.p_a = p_a;
  for (CorruptionCase c : kAllCases) {
    policy.p_o[c] = 0.0;
  }
  policy.p_o[CorruptionCase::kCameraStuck] = 1.0 / 3.0;
  policy.p_o[CorruptionCase::kMissingCamera] = 1.0 / 3.0;
  policy.p_o[CorruptionCase::kSpatialMisalign] = 1.0 / 3.0;
  return policy;
}

void validate(const AugmentPolicy& policy) {
  if (!(policy.p_a >= 0.0 && policy.p_a <= 1.0)) {
    fail(ErrorCode::kPolicyParseError, "p_a must lie in [0, 1]");
  }
  double total = 0.0;
  for (const auto& [c, w] : policy.p_o) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      fail(ErrorCode::kPolicyParseError, "weight for " + std::string(case_name(c)) + " must be >= 0");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    fail(ErrorCode::kPolicyParseError, "p_o must sum to 1 (got " + std::to_string(total) + ")");
  }
  const SeverityTemplates& t = policy.templates;
  if (policy.p_o.contains(CorruptionCase::kLimitFov) && policy.p_o.at(CorruptionCase::kLimitFov) > 0.0 &&
      t.theta0_deg_choices.empty()) {
    fail(ErrorCode::kPolicyParseError, "fov template needs at least one theta0");
  }
  if (policy.p_o.contains(CorruptionCase::kMissingCamera) &&
      policy.p_o.at(CorruptionCase::kMissingCamera) > 0.0 && t.missing_choices.empty()) {
    fail(ErrorCode::kPolicyParseError, "missing_camera template needs at least one choice");
  }
  try {
    for (double deg : t.theta0_deg_choices) {
      validate(FovParams::from_degrees(deg));
    }
    validate(t.object_failure);
    validate(t.occlusion.mask);
    validate(t.calib);
  } catch (const Error& e) {
    fail(ErrorCode::kPolicyParseError, e.what());
  }
}

AugmentPolicy policy_from_json(const Json& j) {
  AugmentPolicy policy;
  policy.p_o.clear();
  try {
    policy.p_a = j.at("p_a").get<double>();
    for (const auto& [name, weight] : j.at("p_o").items()) {
      const auto c = parse_case(name);
      if (!c) {
        fail(ErrorCode::kPolicyParseError, "unknown case '" + name + "' in p_o");
      }
      policy.p_o[*c] = weight.get<double>();
    }
    if (j.contains("templates")) {
      const Json& t = j.at("templates");
      SeverityTemplates& out = policy.templates;
      if (t.contains("fov")) {
        out.theta0_deg_choices = t.at("fov").at("theta0_deg_choices").get<std::vector<double>>();
      }
      if (t.contains("object_failure")) {
        out.object_failure.drop_prob = t.at("object_failure").at("drop_prob").get<double>();
      }
      for (const char* key : {"lidar_stuck", "camera_stuck"}) {
        if (t.contains(key) && t.at(key).contains("mode")) {
          out.stuck_mode = parse_stuck_mode(t.at(key).at("mode").get<std::string>());
        }
      }
      if (t.contains("missing_camera")) {
        out.missing_choices.clear();
        for (const Json& choice : t.at("missing_camera").at("choices")) {
          MissingParams m;
          m.mode = parse_missing_mode(choice.at("mode").get<std::string>());
          m.cameras = choice.value("cameras", std::vector<std::string>{});
          if (m.mode == MissingParams::Mode::kKeepFrontOnly && m.cameras.empty()) {
            m.cameras = {std::string(kDefaultFrontCamera)};
          }
          out.missing_choices.push_back(std::move(m));
        }
      }
      if (t.contains("occlusion")) {
        out.occlusion = std::get<OcclusionParams>(params_from_json(CorruptionCase::kLensOcclusion, t.at("occlusion")));
      }
      if (t.contains("calib")) {
        out.calib = std::get<PerturbationRanges>(params_from_json(CorruptionCase::kSpatialMisalign, t.at("calib")));
      }
    }
  } catch (const Json::exception& e) {
    fail(ErrorCode::kPolicyParseError, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kPolicyParseError) throw;
    fail(ErrorCode::kPolicyParseError, e.what());
  }
  validate(policy);
  return policy;
}

AugmentPolicy load_policy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::kMissingFile, path.string());
  }
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kPolicyParseError, path.string() + ": " + e.what());
  }
  return policy_from_json(j);
}

Json to_json(const AugmentPolicy& policy) {
  Json p_o = Json::object();
  for (const auto& [c, w] : policy.p_o) {
    p_o[std::string(case_name(c))] = w;
  }
  const SeverityTemplates& t = policy.templates;
  Json missing = Json::array();
  for (const MissingParams& m : t.missing_choices) {
    missing.push_back(params_to_json(m));
  }
  Json templates = {
      {"fov", {{"theta0_deg_choices", t.theta0_deg_choices}}},
      {"object_failure", {{"drop_prob", t.object_failure.drop_prob}}},
      {"lidar_stuck", {{"mode", to_string(t.stuck_mode)}}},
      {"camera_stuck", {{"mode", to_string(t.stuck_mode)}}},
      {"missing_camera", {{"choices", std::move(missing)}}},
      {"occlusion", params_to_json(t.occlusion)},
      {"calib", params_to_json(t.calib)},
  };
  return {{"p_a", policy.p_a}, {"p_o", std::move(p_o)}, {"templates", std::move(templates)}};
}

namespace {

CorruptionCase pick_case(const AugmentPolicy& policy, double u) {
  double cumulative = 0.0;
  std::optional<CorruptionCase> last_active;
  for (CorruptionCase c : kAllCases) {
    const auto it = policy.p_o.find(c);
    if (it == policy.p_o.end() || it->second <= 0.0) {
      continue;
    }
    cumulative += it->second;
    last_active = c;
    if (u < cumulative) {
      return c;
    }
  }
  // Only reachable through rounding of the cumulative sum.
  return *last_active;
}

CaseParams sample_severity(const SeverityTemplates& t, CorruptionCase c, Rng& rng) {
  switch (c) {
    case CorruptionCase::kLimitFov:
      return FovParams::from_degrees(t.theta0_deg_choices[rng.uniform_index(t.theta0_deg_choices.size())]);
    case CorruptionCase::kObjectFailure:
      return t.object_failure;
    case CorruptionCase::kLidarStuck:
      return StuckParams{Modality::kLidar, 1.0, t.stuck_mode};
    case CorruptionCase::kCameraStuck:
      return StuckParams{Modality::kCamera, 1.0, t.stuck_mode};
    case CorruptionCase::kMissingCamera:
      return t.missing_choices[rng.uniform_index(t.missing_choices.size())];
    case CorruptionCase::kLensOcclusion:
      return t.occlusion;
    case CorruptionCase::kSpatialMisalign:
      return t.calib;
  }
  return FovParams{};
}

}  // namespace

std::optional<CorruptionSpec> sample_augmentation(const AugmentPolicy& policy, Rng& rng) {
  if (!(rng.uniform01() < policy.p_a)) {
    return std::nullopt;
  }
  CorruptionSpec spec;
  spec.kind = pick_case(policy, rng.uniform01());
  spec.params = sample_severity(policy.templates, spec.kind, rng);
  spec.seed = rng.next_u64();
  return spec;
}

Frame apply_augmentation(const Frame& frame, const CorruptionSpec& spec, const Frame* previous) {
  validate(spec);
  Rng rng(spec.seed);
  switch (spec.kind) {
    case CorruptionCase::kLimitFov:
      return limit_fov(frame, std::get<FovParams>(spec.params));
    case CorruptionCase::kObjectFailure:
      return object_failure(frame, std::get<ObjectFailureParams>(spec.params), rng);
    case CorruptionCase::kLidarStuck:
      return previous ? lidar_stuck_view(frame, previous) : frame;
    case CorruptionCase::kCameraStuck:
      return previous ? camera_stuck_view(frame, previous) : frame;
    case CorruptionCase::kMissingCamera:
      return drop_cameras(frame, std::get<MissingParams>(spec.params));
    case CorruptionCase::kLensOcclusion:
      return occlude_cameras(frame, std::get<OcclusionParams>(spec.params), rng);
    case CorruptionCase::kSpatialMisalign:
      return perturb_calibration(frame, std::get<PerturbationRanges>(spec.params), rng);
  }
  return frame;
}

}  // namespace rfk
