#pragma once

#include <json.hpp>

#include "rfk/corruption_spec.hpp"
#include "rfk/types.hpp"

namespace rfk {

using Json = nlohmann::json;

Json to_json(const SE3Pose& pose);
SE3Pose pose_from_json(const Json& j);

Json to_json(const CameraIntrinsics& k);
CameraIntrinsics intrinsics_from_json(const Json& j);

Json to_json(const BoxAnnotation& box);
BoxAnnotation box_from_json(const Json& j);

Json to_json(const OcclusionMaskSpec& spec);
/// Missing keys keep their defaults.
OcclusionMaskSpec mask_spec_from_json(const Json& j, OcclusionMaskSpec base = {});

Json params_to_json(const CaseParams& params);
/// Missing keys fall back to default_params(c).
CaseParams params_from_json(CorruptionCase c, const Json& j);

/// {"case": name, "params": {...}, "seed": n}
Json to_json(const CorruptionSpec& spec);
CorruptionSpec spec_from_json(const Json& j);

std::string_view to_string(StuckMode mode);
StuckMode parse_stuck_mode(std::string_view s);
std::string_view to_string(Modality m);
Modality parse_modality(std::string_view s);
std::string_view to_string(MissingParams::Mode mode);
MissingParams::Mode parse_missing_mode(std::string_view s);

}  // namespace rfk
