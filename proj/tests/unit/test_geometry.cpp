#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rfk/error.hpp"
#include "rfk/geometry.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

rfk::BoxAnnotation make_box(Eigen::Vector3d center, Eigen::Vector3d size, double yaw) {
  rfk::BoxAnnotation b;
  b.center = center;
  b.size = size;
  b.yaw = yaw;
  b.class_label = "car";
  return b;
}

TEST(Polar, AxisExamples) {
  auto p = rfk::cartesian_to_polar(1, 0, 2);
  EXPECT_EQ(p.r, 1.0);
  EXPECT_EQ(p.theta, 0.0);
  EXPECT_EQ(p.z, 2.0);
  p = rfk::cartesian_to_polar(0, 1, 0);
  EXPECT_EQ(p.r, 1.0);
  EXPECT_DOUBLE_EQ(p.theta, kPi / 2);
}

TEST(Polar, ThirdQuadrantAgainstOracle) {
  const auto p = rfk::cartesian_to_polar(-1, -1, 0);
  EXPECT_DOUBLE_EQ(p.r, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(p.theta, -3 * kPi / 4);
  EXPECT_EQ(p.theta, rfk::testing::azimuth_oracle(-1, -1));
}

TEST(Polar, RearAxisMapsToMinusPi) {
  EXPECT_EQ(rfk::cartesian_to_polar(-1, 0, 0).theta, -kPi);
  EXPECT_EQ(rfk::cartesian_to_polar(-1, -0.0, 0).theta, -kPi);
}

TEST(Polar, OriginConvention) {
  const auto p = rfk::cartesian_to_polar(0, 0, 5);
  EXPECT_EQ(p.r, 0.0);
  EXPECT_EQ(p.theta, 0.0);
}

TEST(Polar, RoundTripAndOracleOnRandomPoints) {
  rfk::Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.uniform(-100, 100), y = rng.uniform(-100, 100), z = rng.uniform(-5, 5);
    const auto p = rfk::cartesian_to_polar(x, y, z);
    ASSERT_GE(p.theta, -kPi);
    ASSERT_LT(p.theta, kPi);
    ASSERT_EQ(p.theta, rfk::testing::azimuth_oracle(x, y));
    const Eigen::Vector3d back = rfk::polar_to_cartesian(p);
    ASSERT_LT((back - Eigen::Vector3d(x, y, z)).norm(), 1e-6);
  }
}

TEST(NormalizeAngle, HalfOpenInterval) {
  EXPECT_EQ(rfk::normalize_angle(kPi), -kPi);
  EXPECT_EQ(rfk::normalize_angle(-kPi), -kPi);
  EXPECT_NEAR(rfk::normalize_angle(3 * kPi / 2), -kPi / 2, 1e-12);
  EXPECT_NEAR(rfk::normalize_angle(-7 * kPi / 2), kPi / 2, 1e-12);
  EXPECT_EQ(rfk::normalize_angle(0.25), 0.25);
}

TEST(PointInBox, InteriorAndInclusiveBoundary) {
  const auto box = make_box({0, 0, 0}, {2, 2, 2}, 0.0);
  EXPECT_TRUE(rfk::point_in_box({0.9, 0, 0}, box));
  EXPECT_TRUE(rfk::point_in_box({1.0, 0, 0}, box));
  EXPECT_FALSE(rfk::point_in_box({1.0000001, 0, 0}, box));
  EXPECT_FALSE(rfk::point_in_box({0, 0, 1.5}, box));
}

TEST(PointInBox, RotatedBoxAgainstDenseOracle) {
  const auto box = make_box({0, 0, 0}, {4, 2, 2}, kPi / 2);
  EXPECT_TRUE(rfk::point_in_box({0.9, 1.9, 0}, box));
  EXPECT_FALSE(rfk::point_in_box({1.9, 0.9, 0}, box));
  EXPECT_TRUE(rfk::testing::point_in_box_oracle({0.9, 1.9, 0}, box.center, box.size, box.yaw));
  EXPECT_FALSE(rfk::testing::point_in_box_oracle({1.9, 0.9, 0}, box.center, box.size, box.yaw));
}

TEST(PointInBox, AgreesWithOracleOnRandomInput) {
  rfk::Rng rng(12);
  for (int i = 0; i < 20000; ++i) {
    const auto box = make_box({rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-1, 1)},
                              {rng.uniform(0.5, 5), rng.uniform(0.5, 3), rng.uniform(0.5, 2)},
                              rng.uniform(-kPi, kPi));
    const Eigen::Vector3d p(rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-2, 2));
    ASSERT_EQ(rfk::point_in_box(p, box), rfk::testing::point_in_box_oracle(p, box.center, box.size, box.yaw));
  }
}

TEST(PointInBox, InvariantUnderJointRotationAboutCentre) {
  rfk::Rng rng(13);
  int checked = 0;
  for (int i = 0; i < 20000; ++i) {
    const Eigen::Vector3d c(rng.uniform(-5, 5), rng.uniform(-5, 5), 0);
    const Eigen::Vector3d size(rng.uniform(0.5, 5), rng.uniform(0.5, 3), 2);
    const double yaw = rng.uniform(-kPi / 2, kPi / 2);
    const Eigen::Vector3d p(c.x() + rng.uniform(-4, 4), c.y() + rng.uniform(-4, 4), 0);
    // Skip points within 1e-9 of a face.
    const double cy = std::cos(yaw), sy = std::sin(yaw);
    const double lx = cy * (p.x() - c.x()) + sy * (p.y() - c.y());
    const double ly = -sy * (p.x() - c.x()) + cy * (p.y() - c.y());
    if (std::abs(std::abs(lx) - size.x() / 2) < 1e-9 || std::abs(std::abs(ly) - size.y() / 2) < 1e-9) continue;

    const double a = rng.uniform(-kPi / 2, kPi / 2);
    const Eigen::Vector3d q = c + Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()) * (p - c);
    ASSERT_EQ(rfk::point_in_box(p, make_box(c, size, yaw)),
              rfk::point_in_box(q, make_box(c, size, rfk::normalize_angle(yaw + a))));
    ++checked;
  }
  EXPECT_GT(checked, 19000);
}

TEST(SampleRotation, DegenerateRangeIsIdentity) {
  rfk::Rng rng(1);
  const auto r = rfk::sample_rotation(rng, {0, 0, 0, 0});
  EXPECT_EQ(r.rotation_angle(), 0.0);
  EXPECT_EQ(r.translation(), Eigen::Vector3d::Zero());
}

TEST(SampleRotation, AngleInRangeAndMeanMatchesUniformLaw) {
  rfk::Rng rng(2);
  const auto ranges = rfk::PerturbationRanges::benchmark_default();
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto r = rfk::sample_rotation(rng, ranges);
    const double acos_angle = 2.0 * std::acos(std::min(1.0, std::abs(r.rotation().w())));
    ASSERT_LE(acos_angle, ranges.rot_max + 1e-9);
    ASSERT_GE(acos_angle, ranges.rot_min - 1e-9);
    ASSERT_NEAR(r.rotation().norm(), 1.0, 1e-12);
    sum += r.rotation_angle();
  }
  EXPECT_NEAR(rfk::rad_to_deg(sum / n), 2.5, 0.05);
}

TEST(SampleTranslation, DegenerateAndBounded) {
  rfk::Rng rng(3);
  EXPECT_EQ(rfk::sample_translation(rng, {0, 0, 0, 0}), Eigen::Vector3d::Zero());
  const auto ranges = rfk::PerturbationRanges::benchmark_default();
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double m = rfk::sample_translation(rng, ranges).norm();
    ASSERT_GE(m, 0.01 - 1e-12);
    ASSERT_LE(m, 0.05 + 1e-12);
    sum += m;
  }
  EXPECT_NEAR(sum / n, 0.03, 0.001);
}

TEST(PerturbationRanges, Validation) {
  EXPECT_THROW(rfk::validate(rfk::PerturbationRanges{0.2, 0.1, 0, 0}), rfk::Error);
  EXPECT_THROW(rfk::validate(rfk::PerturbationRanges{0, 0, -0.01, 0.01}), rfk::Error);
  EXPECT_NO_THROW(rfk::validate(rfk::PerturbationRanges::benchmark_default()));
}

rfk::SE3Pose random_pose(rfk::Rng& rng) {
  const auto axis = rng.unit_vector();
  return rfk::SE3Pose(
      Eigen::Quaterniond(Eigen::AngleAxisd(rng.uniform(0, kPi), Eigen::Vector3d(axis[0], axis[1], axis[2]))),
      Eigen::Vector3d(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)));
}

TEST(Compose, IdentityAndInverse) {
  rfk::Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_pose(rng);
    const auto left = rfk::compose(rfk::SE3Pose(), x);
    EXPECT_LT((left.rotation_matrix() - x.rotation_matrix()).norm(), 1e-12);
    EXPECT_LT((left.translation() - x.translation()).norm(), 1e-12);
    const auto id = rfk::compose(x, x.inverse());
    EXPECT_LT(id.rotation_angle(), 1e-9);
    EXPECT_LT(id.translation().norm(), 1e-9);
  }
}

TEST(Compose, QuarterTurnsAgainstMatrixProductOracle) {
  const rfk::SE3Pose quarter(Eigen::Quaterniond(Eigen::AngleAxisd(kPi / 2, Eigen::Vector3d::UnitZ())),
                             Eigen::Vector3d::Zero());
  const auto half = rfk::compose(quarter, quarter);
  EXPECT_NEAR(half.rotation_angle(), kPi, 1e-12);
  Eigen::Matrix3d rz;
  rz << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  Eigen::Matrix3d expected;
  expected << -1, 0, 0, 0, -1, 0, 0, 0, 1;
  EXPECT_LT((rz * rz - expected).norm(), 1e-15);
  EXPECT_LT((half.rotation_matrix() - expected).norm(), 1e-12);
}

TEST(Compose, MatchesHomogeneousMatrixProductAndApplyChain) {
  rfk::Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_pose(rng), b = random_pose(rng);
    Eigen::Matrix4d ma = Eigen::Matrix4d::Identity(), mb = Eigen::Matrix4d::Identity();
    ma.topLeftCorner<3, 3>() = a.rotation_matrix();
    ma.topRightCorner<3, 1>() = a.translation();
    mb.topLeftCorner<3, 3>() = b.rotation_matrix();
    mb.topRightCorner<3, 1>() = b.translation();
    const Eigen::Matrix4d mab = ma * mb;
    const auto ab = rfk::compose(a, b);
    ASSERT_LT((ab.rotation_matrix() - mab.topLeftCorner<3, 3>()).norm(), 1e-12);
    ASSERT_LT((ab.translation() - mab.topRightCorner<3, 1>()).norm(), 1e-12);
    const Eigen::Vector3d p(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9));
    ASSERT_LT((ab.apply(p) - a.apply(b.apply(p))).norm(), 1e-12);
    ASSERT_NEAR(ab.rotation().norm(), 1.0, 1e-15);
  }
}

TEST(Compose, Associative) {
  rfk::Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_pose(rng), b = random_pose(rng), c = random_pose(rng);
    const auto l = rfk::compose(rfk::compose(a, b), c);
    const auto r = rfk::compose(a, rfk::compose(b, c));
    ASSERT_LT(rfk::compose(l, r.inverse()).rotation_angle(), 1e-9);
    ASSERT_LT((l.translation() - r.translation()).norm(), 1e-9);
  }
}

}  // namespace
