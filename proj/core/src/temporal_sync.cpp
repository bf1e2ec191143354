#include "rfk/temporal_sync.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rfk/camera_corruption.hpp"
#include "rfk/error.hpp"
#include "rfk/lidar_corruption.hpp"

namespace rfk {

void validate(const StuckParams& params) {
  if (!(params.ratio >= 0.0 && params.ratio <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "stuck ratio must lie in [0, 1]");
  }
}

std::size_t stuck_count(std::size_t n_frames, double ratio) {
  if (n_frames <= 1) {
    return 0;
  }
  // Half-up, with slack so decimal ratios like 0.3 * 5 still round up.
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n_frames - 1) + 0.5 + 1e-9));
}

StuckPlan select_stuck(std::size_t n_frames, const StuckParams& params, Rng& rng) {
  validate(params);
  if (n_frames == 0) {
    fail(ErrorCode::kInvalidArgument, "n_frames must be >= 1");
  }
  const std::size_t eligible = n_frames - 1;
  const std::size_t k = stuck_count(n_frames, params.ratio);

  StuckPlan plan;
  if (k == 0) {
    return plan;
  }
  if (params.mode == StuckMode::kDiscrete) {
    std::vector<std::size_t> pool(eligible);
    std::iota(pool.begin(), pool.end(), std::size_t{1});
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + rng.uniform_index(eligible - i);
      std::swap(pool[i], pool[j]);
    }
    plan.stuck_indices.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(plan.stuck_indices.begin(), plan.stuck_indices.end());
  } else {
    // Start in [1, n - k] so the run ends at or before n - 1.
    const std::size_t start = 1 + rng.uniform_index(eligible - k + 1);
    plan.stuck_indices.resize(k);
    std::iota(plan.stuck_indices.begin(), plan.stuck_indices.end(), start);
  }

  std::size_t last_clean = 0;
  std::size_t next = 0;
  for (std::size_t i = 1; i < n_frames && next < plan.stuck_indices.size(); ++i) {
    if (plan.stuck_indices[next] == i) {
      plan.source_index.emplace(i, last_clean);
      ++next;
    } else {
      last_clean = i;
    }
  }
  return plan;
}

std::vector<Frame> apply_stuck(std::span<const Frame> sequence, const StuckPlan& plan, Modality modality) {
  for (const auto& [stuck, source] : plan.source_index) {
    if (stuck >= sequence.size() || source >= sequence.size()) {
      fail(ErrorCode::kPlanOutOfRange, "plan index " + std::to_string(std::max(stuck, source)) +
                                           " beyond sequence of " + std::to_string(sequence.size()));
    }
  }
  for (std::size_t index : plan.stuck_indices) {
    if (!plan.source_index.contains(index)) {
      fail(ErrorCode::kPlanOutOfRange, "stuck index " + std::to_string(index) + " has no source");
    }
  }

  std::vector<Frame> out(sequence.begin(), sequence.end());
  for (const auto& [stuck, source] : plan.source_index) {
    // Sources are read from the input sequence, never from replaced frames.
    const Frame* src = &sequence[source];
    out[stuck] = modality == Modality::kLidar ? lidar_stuck_view(sequence[stuck], src)
                                              : camera_stuck_view(sequence[stuck], src);
  }
  return out;
}

std::vector<SweepLevel> severity_sweep(std::size_t n_frames, Modality modality, StuckMode mode, Rng& rng) {
  if (n_frames < 2) {
    fail(ErrorCode::kInvalidArgument, "severity sweep needs at least two frames");
  }
  std::vector<SweepLevel> levels;
  levels.reserve(9);
  for (int level = 1; level <= 9; ++level) {
    SweepLevel entry;
    entry.level = level;
    entry.ratio = level / 10.0;
    entry.seed = rng.next_u64();
    Rng level_rng(entry.seed);
    entry.plan = select_stuck(n_frames, {modality, entry.ratio, mode}, level_rng);
    levels.push_back(std::move(entry));
  }
  return levels;
}

}  // namespace rfk
