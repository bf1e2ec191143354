#include <gtest/gtest.h>

#include <map>

#include "fixture.hpp"
#include "rfk/error.hpp"
#include "rfk/augment.hpp"

namespace {

using rfk::CorruptionCase;

TEST(Augment, ZeroProbabilityNeverAugments) {
  const auto policy = rfk::AugmentPolicy::table9(0.0);
  rfk::Rng rng(3);
  for (int i = 0; i < 10000; ++i) ASSERT_FALSE(rfk::sample_augmentation(policy, rng));
}

TEST(Augment, FullProbabilityOnlyDrawsActiveCases) {
  const auto policy = rfk::AugmentPolicy::table9(1.0);
  rfk::Rng rng(4);
  std::map<CorruptionCase, int> counts;
  for (int i = 0; i < 30000; ++i) {
    const auto spec = rfk::sample_augmentation(policy, rng);
    ASSERT_TRUE(spec);
    rfk::validate(*spec);
    ++counts[spec->kind];
  }
  ASSERT_EQ(counts.size(), 3u);
  for (CorruptionCase c :
       {CorruptionCase::kCameraStuck, CorruptionCase::kMissingCamera, CorruptionCase::kSpatialMisalign}) {
    // sd of a 1/3 proportion over 3e4 draws is 0.0027.
    EXPECT_NEAR(counts[c] / 30000.0, 1.0 / 3.0, 0.012) << rfk::case_name(c);
  }
}

TEST(Augment, CascadeProportions) {
  const auto policy = rfk::AugmentPolicy::table9(0.5);
  rfk::Rng rng(11);
  constexpr int kDraws = 60000;
  int clean = 0;
  std::map<CorruptionCase, int> counts;
  for (int i = 0; i < kDraws; ++i) {
    const auto spec = rfk::sample_augmentation(policy, rng);
    spec ? ++counts[spec->kind] : ++clean;
  }
  EXPECT_NEAR(clean / double(kDraws), 0.5, 0.01);
  for (const auto& [c, n] : counts) EXPECT_NEAR(n / double(kDraws), 1.0 / 6.0, 0.01) << rfk::case_name(c);
}

TEST(Augment, SamplingIsDeterministic) {
  const auto policy = rfk::AugmentPolicy::table9(0.5);
  rfk::Rng a(77), b(77);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(rfk::sample_augmentation(policy, a), rfk::sample_augmentation(policy, b));
}

TEST(Augment, SeverityTemplatesAreRespected) {
  rfk::AugmentPolicy policy;
  policy.p_a = 1.0;
  policy.p_o = {{CorruptionCase::kLimitFov, 0.5}, {CorruptionCase::kObjectFailure, 0.5}};
  policy.templates.theta0_deg_choices = {30.0, 45.0};
  policy.templates.object_failure.drop_prob = 0.25;
  rfk::validate(policy);
  rfk::Rng rng(8);
  std::map<double, int> thetas;
  for (int i = 0; i < 2000; ++i) {
    const auto spec = *rfk::sample_augmentation(policy, rng);
    if (spec.kind == CorruptionCase::kLimitFov) {
      ++thetas[std::get<rfk::FovParams>(spec.params).theta0];
    } else {
      EXPECT_EQ(std::get<rfk::ObjectFailureParams>(spec.params).drop_prob, 0.25);
    }
  }
  ASSERT_EQ(thetas.size(), 2u);
  EXPECT_TRUE(thetas.contains(rfk::FovParams::from_degrees(30).theta0));
  EXPECT_TRUE(thetas.contains(rfk::FovParams::from_degrees(45).theta0));
}

TEST(AugmentPolicy, Validation) {
  auto policy = rfk::AugmentPolicy::table9();
  policy.p_o[CorruptionCase::kLimitFov] = 0.1;
  try {
    rfk::validate(policy);
    FAIL();
  } catch (const rfk::Error& e) {
    EXPECT_EQ(e.code(), rfk::ErrorCode::kPolicyParseError);
  }
  policy = rfk::AugmentPolicy::table9(1.5);
  EXPECT_THROW(rfk::validate(policy), rfk::Error);
  policy = rfk::AugmentPolicy::table9();
  policy.p_o[CorruptionCase::kCameraStuck] = -0.1;
  policy.p_o[CorruptionCase::kMissingCamera] += 0.1;
  EXPECT_THROW(rfk::validate(policy), rfk::Error);
}

TEST(AugmentPolicy, JsonRoundTrip) {
  auto policy = rfk::AugmentPolicy::table9(0.3);
  policy.templates.theta0_deg_choices = {10.0, 20.0};
  policy.templates.stuck_mode = rfk::StuckMode::kConsecutive;
  const auto back = rfk::policy_from_json(rfk::Json::parse(rfk::to_json(policy).dump()));
  EXPECT_EQ(back.p_a, policy.p_a);
  EXPECT_EQ(back.p_o, policy.p_o);
  EXPECT_EQ(back.templates.missing_choices, policy.templates.missing_choices);
  EXPECT_EQ(back.templates.stuck_mode, rfk::StuckMode::kConsecutive);
  EXPECT_EQ(back.templates.calib.rot_max, policy.templates.calib.rot_max);
  EXPECT_EQ(back.templates.occlusion, policy.templates.occlusion);
  ASSERT_EQ(back.templates.theta0_deg_choices.size(), 2u);
}

TEST(AugmentPolicy, JsonErrors) {
  for (const char* text : {R"({"p_o": {"fov": 1}})", R"({"p_a": 0.5, "p_o": {"rain": 1}})",
                           R"({"p_a": 0.5, "p_o": {"fov": "x"}})", R"({"p_a": 0.5, "p_o": {"fov": 0.5}})"}) {
    try {
      rfk::policy_from_json(rfk::Json::parse(text));
      FAIL() << text;
    } catch (const rfk::Error& e) {
      EXPECT_EQ(e.code(), rfk::ErrorCode::kPolicyParseError) << text;
    }
  }
}

TEST(AugmentPolicy, ShippedTable9MatchesBuiltIn) {
  const auto loaded = rfk::load_policy(std::filesystem::path(RFK_POLICY_DIR) / "table9.json");
  const auto builtin = rfk::AugmentPolicy::table9();
  EXPECT_EQ(loaded.p_a, builtin.p_a);
  for (const auto& [c, w] : builtin.p_o) EXPECT_NEAR(loaded.p_o.at(c), w, 1e-15) << rfk::case_name(c);
  EXPECT_EQ(loaded.templates.missing_choices, builtin.templates.missing_choices);
  EXPECT_EQ(loaded.templates.calib.rot_min, builtin.templates.calib.rot_min);
  EXPECT_NEAR(loaded.templates.calib.rot_max, builtin.templates.calib.rot_max, 1e-15);
  EXPECT_NEAR(loaded.templates.calib.trans_min, builtin.templates.calib.trans_min, 1e-15);
  EXPECT_NEAR(loaded.templates.calib.trans_max, builtin.templates.calib.trans_max, 1e-15);
}

rfk::CorruptionSpec spec_of(CorruptionCase kind, rfk::CaseParams params, std::uint64_t seed) {
  return {kind, std::move(params), seed};
}

TEST(ApplyAugmentation, DispatchesToCorruptionModules) {
  const rfk::Frame frame = rfk::testing::fixture_frame(0);
  const auto fov = rfk::FovParams::from_degrees(60);
  EXPECT_EQ(rfk::apply_augmentation(frame, spec_of(CorruptionCase::kLimitFov, fov, 1)), rfk::limit_fov(frame, fov));

  const auto drop = rfk::MissingParams::drop_one("CAM_FRONT");
  EXPECT_EQ(rfk::apply_augmentation(frame, spec_of(CorruptionCase::kMissingCamera, drop, 1)),
            rfk::drop_cameras(frame, drop));

  const auto ranges = rfk::PerturbationRanges::benchmark_default();
  rfk::Rng rng(99);
  EXPECT_EQ(rfk::apply_augmentation(frame, spec_of(CorruptionCase::kSpatialMisalign, ranges, 99)),
            rfk::perturb_calibration(frame, ranges, rng));

  const rfk::ObjectFailureParams of{0.5};
  rfk::Rng rng2(5);
  EXPECT_EQ(rfk::apply_augmentation(frame, spec_of(CorruptionCase::kObjectFailure, of, 5)),
            rfk::object_failure(frame, of, rng2));
}

TEST(ApplyAugmentation, TemporalCases) {
  const auto seq = rfk::testing::fixture_sequence(2);
  const rfk::StuckParams cam{rfk::Modality::kCamera, 1.0, rfk::StuckMode::kDiscrete};
  const auto spec = spec_of(CorruptionCase::kCameraStuck, cam, 0);
  EXPECT_EQ(rfk::apply_augmentation(seq[1], spec), seq[1]);
  EXPECT_EQ(rfk::apply_augmentation(seq[1], spec, &seq[0]), rfk::camera_stuck_view(seq[1], &seq[0]));
}

TEST(ApplyAugmentation, RejectsMismatchedParams) {
  const rfk::Frame frame = rfk::testing::fixture_frame(0);
  EXPECT_THROW(rfk::apply_augmentation(frame, spec_of(CorruptionCase::kLimitFov, rfk::ObjectFailureParams{}, 0)),
               rfk::Error);
}

}  // namespace
