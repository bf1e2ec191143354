#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <unordered_set>

#include "oracles.hpp"
#include "rfk/error.hpp"
#include "rfk/pipeline.hpp"
#include "rfk/rng.hpp"

namespace {

using rfk::testing::fnv1a64_reference;

TEST(Fnv1a, MatchesFrozenVectors) {
  // Computed once with an independent Python implementation.
  EXPECT_EQ(rfk::fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(rfk::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(rfk::fnv1a64("0|fov|frame_0001"), 0x53b46569a3a9265dULL);
  EXPECT_EQ(rfk::fnv1a64("42|calib|scene-0001_frame_03"), 0x875149376d0aef56ULL);
}

TEST(Fnv1a, AgreesWithReferenceOnRandomStrings) {
  rfk::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    std::string s(rng.uniform_index(40), '\0');
    for (char& c : s) c = static_cast<char>(rng.uniform_index(256));
    EXPECT_EQ(rfk::fnv1a64(s), fnv1a64_reference(s));
  }
}

TEST(DeriveSeed, PublishedVector) {
  EXPECT_EQ(rfk::derive_seed(0, "fov", "frame_0001"), 6031557305347679837ULL);
  EXPECT_EQ(rfk::derive_seed(42, "calib", "scene-0001_frame_03"), 0x875149376d0aef56ULL);
}

TEST(DeriveSeed, DeterministicAndDecimalFormatted) {
  EXPECT_EQ(rfk::derive_seed(18446744073709551615ULL, "occlusion", "x"),
            fnv1a64_reference("18446744073709551615|occlusion|x"));
  EXPECT_EQ(rfk::derive_seed(3, "fov", "f"), rfk::derive_seed(3, "fov", "f"));
  EXPECT_NE(rfk::derive_seed(3, "fov", "f"), rfk::derive_seed(4, "fov", "f"));
  EXPECT_NE(rfk::derive_seed(3, "fov", "f"), rfk::derive_seed(3, "calib", "f"));
}

TEST(DeriveSeed, NoCollisionsOverAMillionFrameIds) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(2'000'000);
  char buf[32];
  for (int i = 0; i < 1'000'000; ++i) {
    std::snprintf(buf, sizeof(buf), "frame_%07d", i);
    ASSERT_TRUE(seen.insert(rfk::derive_seed(0, "fov", buf)).second) << buf;
  }
}

TEST(Rng, SameSeedSameStream) {
  rfk::Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, Mt19937FirstOutputIsStandard) {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  rfk::Rng rng(5489);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next_u64();
  EXPECT_EQ(v, 9981545732273789042ULL);
}

TEST(Rng, Uniform01Range) {
  rfk::Rng rng(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(Rng, UniformDegenerateRange) {
  rfk::Rng rng(1);
  EXPECT_EQ(rng.uniform(2.5, 2.5), 2.5);
  const double v = rng.uniform(-1.0, 1.0);
  EXPECT_GE(v, -1.0);
  EXPECT_LE(v, 1.0);
}

TEST(Rng, UniformIndexCoversRangeEvenly) {
  rfk::Rng rng(3);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.uniform_index(7)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
  EXPECT_EQ(rng.uniform_index(1), 0u);
}

TEST(Rng, UniformIntClosed) {
  rfk::Rng rng(4);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.uniform_int(-2, 2);
    ASSERT_GE(v, -2);
    ASSERT_LE(v, 2);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 5u);
  EXPECT_EQ(rng.uniform_int(9, 9), 9);
}

TEST(Rng, UnitVectorIsUnitAndIsotropic) {
  rfk::Rng rng(5);
  double mx = 0, my = 0, mz = 0, zz = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto v = rng.unit_vector();
    ASSERT_NEAR(v[0] * v[0] + v[1] * v[1] + v[2] * v[2], 1.0, 1e-12);
    mx += v[0];
    my += v[1];
    mz += v[2];
    zz += v[2] * v[2];
  }
  EXPECT_NEAR(mx / n, 0.0, 0.01);
  EXPECT_NEAR(my / n, 0.0, 0.01);
  EXPECT_NEAR(mz / n, 0.0, 0.01);
  EXPECT_NEAR(zz / n, 1.0 / 3.0, 0.01);
}

TEST(Rng, BernoulliEdges) {
  rfk::Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_FALSE(rng.bernoulli(0.0));
    ASSERT_TRUE(rng.bernoulli(1.0));
  }
}

}  // namespace
