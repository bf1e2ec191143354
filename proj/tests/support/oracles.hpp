#pragma once

// Independent reference implementations used to cross-check the library.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace rfk::testing {

/// Textbook FNV-1a 64 written against the published constants.
std::uint64_t fnv1a64_reference(std::string_view text);

/// atan2 wrapped into [-pi, pi) by an explicit branch.
double azimuth_oracle(double x, double y);

/// Point-in-box with a dense 2x2 rotation matrix.
bool point_in_box_oracle(const Eigen::Vector3d& p, const Eigen::Vector3d& center, const Eigen::Vector3d& size,
                         double yaw);

struct OraclePrediction {
  int frame = 0;
  double x = 0.0;
  double y = 0.0;
  double score = 0.0;
};

struct OracleTruth {
  int frame = 0;
  double x = 0.0;
  double y = 0.0;
};

/// AP of one class at one threshold as an exact rational: the returned
/// integer N satisfies AP = N / (2520 * 101). Matching is found by
/// enumerating every injective assignment and keeping the one whose
/// rank-ordered distance vector (unmatched = +inf) is lexicographically
/// smallest. Predictions must have distinct scores.
std::int64_t ap_numerator_oracle(const std::vector<OraclePrediction>& preds, const std::vector<OracleTruth>& truth,
                                 double threshold);

inline constexpr std::int64_t kApDenominator = 2520 * 101;

}  // namespace rfk::testing
