#include "rfk/json_codec.hpp"

#include <string>

#include "rfk/error.hpp"

namespace rfk {

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& what) {
  fail(ErrorCode::kSchemaViolation, field + ": " + what);
}

template <std::size_t N>
std::array<double, N> number_array(const Json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_array() || j.at(field).size() != N) {
    schema(field, "expected an array of " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    const Json& v = j.at(field)[i];
    if (!v.is_number()) {
      schema(field, "expected numbers");
    }
    out[i] = v.get<double>();
  }
  return out;
}

double number(const Json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_number()) {
    schema(field, "expected a number");
  }
  return j.at(field).get<double>();
}

std::string string_field(const Json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_string()) {
    schema(field, "expected a string");
  }
  return j.at(field).get<std::string>();
}

void read_range(const Json& j, const char* field, double& lo, double& hi, double scale = 1.0) {
  if (j.contains(field)) {
    const auto r = number_array<2>(j, field);
    lo = r[0] * scale;
    hi = r[1] * scale;
  }
}

}  // namespace

Json to_json(const SE3Pose& pose) {
  return {{"q", pose.quaternion_wxyz()}, {"t", pose.translation_xyz()}};
}

SE3Pose pose_from_json(const Json& j) {
  if (!j.is_object()) {
    schema("extrinsic", "expected an object");
  }
  try {
    return SE3Pose::from_wxyz(number_array<4>(j, "q"), number_array<3>(j, "t"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchemaViolation) {
      throw;
    }
    schema("extrinsic", e.what());
  }
}

Json to_json(const CameraIntrinsics& k) {
  return {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy}, {"w", k.image_width}, {"h", k.image_height}};
}

CameraIntrinsics intrinsics_from_json(const Json& j) {
  if (!j.is_object()) {
    schema("intrinsics", "expected an object");
  }
  CameraIntrinsics k;
  k.fx = number(j, "fx");
  k.fy = number(j, "fy");
  k.cx = number(j, "cx");
  k.cy = number(j, "cy");
  if (!j.contains("w") || !j.at("w").is_number_integer() || !j.contains("h") || !j.at("h").is_number_integer()) {
    schema("intrinsics", "w and h must be integers");
  }
  k.image_width = j.at("w").get<int>();
  k.image_height = j.at("h").get<int>();
  validate(k);
  return k;
}

Json to_json(const BoxAnnotation& box) {
  return {{"center", {box.center.x(), box.center.y(), box.center.z()}},
          {"size", {box.size.x(), box.size.y(), box.size.z()}},
          {"yaw", box.yaw},
          {"class_label", box.class_label},
          {"instance_id", box.instance_id}};
}

BoxAnnotation box_from_json(const Json& j) {
  if (!j.is_object()) {
    schema("annotation", "expected an object");
  }
  BoxAnnotation box;
  const auto c = number_array<3>(j, "center");
  const auto s = number_array<3>(j, "size");
  box.center = {c[0], c[1], c[2]};
  box.size = {s[0], s[1], s[2]};
  box.yaw = number(j, "yaw");
  box.class_label = string_field(j, "class_label");
  box.instance_id = string_field(j, "instance_id");
  validate(box);
  return box;
}

Json to_json(const OcclusionMaskSpec& s) {
  return {{"blob_count", {s.blob_count_min, s.blob_count_max}},
          {"blob_radius_px", {s.blob_radius_min, s.blob_radius_max}},
          {"opacity", {s.opacity_min, s.opacity_max}},
          {"jitter_translation_px", {s.jitter_translation_min, s.jitter_translation_max}},
          {"jitter_rotation_rad", {s.jitter_rotation_min, s.jitter_rotation_max}},
          {"color", s.color},
          {"falloff_exponent", s.falloff_exponent}};
}

OcclusionMaskSpec mask_spec_from_json(const Json& j, OcclusionMaskSpec s) {
  if (!j.is_object()) {
    schema("occlusion", "expected an object");
  }
  if (j.contains("blob_count")) {
    const auto r = number_array<2>(j, "blob_count");
    s.blob_count_min = static_cast<int>(r[0]);
    s.blob_count_max = static_cast<int>(r[1]);
  }
  read_range(j, "blob_radius_px", s.blob_radius_min, s.blob_radius_max);
  read_range(j, "opacity", s.opacity_min, s.opacity_max);
  read_range(j, "jitter_translation_px", s.jitter_translation_min, s.jitter_translation_max);
  read_range(j, "jitter_rotation_rad", s.jitter_rotation_min, s.jitter_rotation_max);
  read_range(j, "jitter_rotation_deg", s.jitter_rotation_min, s.jitter_rotation_max, deg_to_rad(1.0));
  if (j.contains("color")) {
    const auto c = number_array<3>(j, "color");
    for (std::size_t i = 0; i < 3; ++i) {
      if (c[i] < 0 || c[i] > 255) {
        schema("color", "channels must lie in [0, 255]");
      }
      s.color[i] = static_cast<std::uint8_t>(c[i]);
    }
  }
  if (j.contains("falloff_exponent")) {
    s.falloff_exponent = number(j, "falloff_exponent");
  }
  try {
    validate(s);
  } catch (const Error& e) {
    schema("occlusion", e.what());
  }
  return s;
}

std::string_view to_string(StuckMode mode) {
  return mode == StuckMode::kDiscrete ? "discrete" : "consecutive";
}

StuckMode parse_stuck_mode(std::string_view s) {
  if (s == "discrete") return StuckMode::kDiscrete;
  if (s == "consecutive") return StuckMode::kConsecutive;
  fail(ErrorCode::kInvalidArgument, "stuck mode must be discrete|consecutive, got '" + std::string(s) + "'");
}

std::string_view to_string(Modality m) { return m == Modality::kLidar ? "lidar" : "camera"; }

Modality parse_modality(std::string_view s) {
  if (s == "lidar") return Modality::kLidar;
  if (s == "camera") return Modality::kCamera;
  fail(ErrorCode::kInvalidArgument, "modality must be lidar|camera, got '" + std::string(s) + "'");
}

std::string_view to_string(MissingParams::Mode mode) {
  switch (mode) {
    case MissingParams::Mode::kDropOne: return "drop_one";
    case MissingParams::Mode::kKeepFrontOnly: return "keep_front_only";
    case MissingParams::Mode::kDropSet: return "drop_set";
  }
  return "drop_one";
}

MissingParams::Mode parse_missing_mode(std::string_view s) {
  if (s == "drop_one") return MissingParams::Mode::kDropOne;
  if (s == "keep_front_only") return MissingParams::Mode::kKeepFrontOnly;
  if (s == "drop_set") return MissingParams::Mode::kDropSet;
  fail(ErrorCode::kInvalidArgument,
       "missing mode must be drop_one|keep_front_only|drop_set, got '" + std::string(s) + "'");
}

Json params_to_json(const CaseParams& params) {
  return std::visit(
      [](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, FovParams>) {
          return {{"theta0_rad", p.theta0}, {"theta0_deg", rad_to_deg(p.theta0)}};
        } else if constexpr (std::is_same_v<T, ObjectFailureParams>) {
          return {{"drop_prob", p.drop_prob}};
        } else if constexpr (std::is_same_v<T, StuckParams>) {
          return {{"modality", to_string(p.modality)}, {"ratio", p.ratio}, {"mode", to_string(p.mode)}};
        } else if constexpr (std::is_same_v<T, MissingParams>) {
          return {{"mode", to_string(p.mode)}, {"cameras", p.cameras}};
        } else if constexpr (std::is_same_v<T, OcclusionParams>) {
          return {{"mask", to_json(p.mask)}, {"cameras", p.cameras}};
        } else {
          return {{"rot_rad", {p.rot_min, p.rot_max}}, {"trans_m", {p.trans_min, p.trans_max}}};
        }
      },
      params);
}

CaseParams params_from_json(CorruptionCase c, const Json& j) {
  if (!j.is_object()) {
    schema("params", "expected an object");
  }
  CaseParams params = default_params(c);
  try {
    std::visit(
        [&j](auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, FovParams>) {
            if (j.contains("theta0_rad")) {
              p.theta0 = number(j, "theta0_rad");
            } else if (j.contains("theta0_deg")) {
              p.theta0 = deg_to_rad(number(j, "theta0_deg"));
            }
          } else if constexpr (std::is_same_v<T, ObjectFailureParams>) {
            if (j.contains("drop_prob")) p.drop_prob = number(j, "drop_prob");
          } else if constexpr (std::is_same_v<T, StuckParams>) {
            if (j.contains("ratio")) p.ratio = number(j, "ratio");
            if (j.contains("mode")) p.mode = parse_stuck_mode(string_field(j, "mode"));
          } else if constexpr (std::is_same_v<T, MissingParams>) {
            if (j.contains("mode")) p.mode = parse_missing_mode(string_field(j, "mode"));
            if (j.contains("cameras")) p.cameras = j.at("cameras").get<std::vector<std::string>>();
          } else if constexpr (std::is_same_v<T, OcclusionParams>) {
            if (j.contains("mask")) p.mask = mask_spec_from_json(j.at("mask"));
            if (j.contains("cameras")) p.cameras = j.at("cameras").get<std::vector<std::string>>();
          } else {
            read_range(j, "rot_rad", p.rot_min, p.rot_max);
            read_range(j, "rot_deg", p.rot_min, p.rot_max, deg_to_rad(1.0));
            read_range(j, "trans_m", p.trans_min, p.trans_max);
            read_range(j, "trans_cm", p.trans_min, p.trans_max, 0.01);
          }
        },
        params);
  } catch (const Json::exception& e) {
    schema("params", e.what());
  }
  return params;
}

Json to_json(const CorruptionSpec& spec) {
  return {{"case", case_name(spec.kind)}, {"params", params_to_json(spec.params)}, {"seed", spec.seed}};
}

CorruptionSpec spec_from_json(const Json& j) {
  if (!j.is_object()) {
    schema("spec", "expected an object");
  }
  const std::string name = string_field(j, "case");
  const auto c = parse_case(name);
  if (!c) {
    schema("case", "unknown case '" + name + "'");
  }
  CorruptionSpec spec;
  spec.kind = *c;
  spec.params = j.contains("params") ? params_from_json(*c, j.at("params")) : default_params(*c);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) {
      schema("seed", "expected an unsigned integer");
    }
    spec.seed = j.at("seed").get<std::uint64_t>();
  }
  validate(spec);
  return spec;
}

}  // namespace rfk
