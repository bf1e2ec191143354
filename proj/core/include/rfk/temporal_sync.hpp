#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "rfk/rng.hpp"
#include "rfk/types.hpp"

namespace rfk {

enum class Modality : std::uint8_t { kLidar, kCamera };
enum class StuckMode : std::uint8_t { kDiscrete, kConsecutive };

struct StuckParams {
  Modality modality = Modality::kLidar;
  /// Fraction of the n - 1 eligible frames that get stuck.
  double ratio = 0.5;
  StuckMode mode = StuckMode::kDiscrete;

  bool operator==(const StuckParams&) const = default;
};

void validate(const StuckParams& params);

struct StuckPlan {
  /// Sorted ascending; never contains 0.
  std::vector<std::size_t> stuck_indices;
  /// stuck index -> nearest non-stuck predecessor.
  std::map<std::size_t, std::size_t> source_index;

  bool empty() const { return stuck_indices.empty(); }
  bool operator==(const StuckPlan&) const = default;
};

/// round(ratio * (n_frames - 1)), halves rounded up.
std::size_t stuck_count(std::size_t n_frames, double ratio);

/// Discrete: k indices from {1..n-1} without replacement (partial
/// Fisher-Yates). Consecutive: one run of k with a uniformly drawn start.
StuckPlan select_stuck(std::size_t n_frames, const StuckParams& params, Rng& rng);

/// Applies the plan by substituting each stuck frame's modality payload with
/// that of its source. Timestamps and annotations are left as they are.
std::vector<Frame> apply_stuck(std::span<const Frame> sequence, const StuckPlan& plan, Modality modality);

struct SweepLevel {
  int level = 0;  // 1..9
  double ratio = 0.0;
  std::uint64_t seed = 0;
  StuckPlan plan;
};

/// Nine plans at ratios 0.1 .. 0.9. Level l uses Rng(seed_l), where seed_l is
/// the l-th next_u64() of the supplied generator.
std::vector<SweepLevel> severity_sweep(std::size_t n_frames, Modality modality, StuckMode mode, Rng& rng);

}  // namespace rfk
