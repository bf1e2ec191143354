#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "rfk/json_codec.hpp"
#include "rfk/types.hpp"

namespace rfk {

/// Clean score plus per (disruption type, severity level) scores.
struct RobustnessGrid {
  std::string metric_name;
  double clean_score = 0.0;
  std::map<std::string, std::map<std::string, double>> cells;

  void add(const std::string& type, const std::string& level, double score) { cells[type][level] = score; }
};

void validate(const RobustnessGrid& grid);

/// Nested mean: average the levels of each type, then average the types.
/// Exactly invariant to cell and level-label order (values are summed in
/// sorted order). Throws kEmptyGrid.
double mean_robustness(const RobustnessGrid& grid);

/// mP_R / P_C. Throws kZeroCleanScore when clean_score <= 0.
double relative_robustness(double mean_robust, double clean_score);

/// Half-up rounding to a fixed number of decimals, as printed in tables.
double round_half_up(double value, int decimals);

struct DetectionBox {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d size = Eigen::Vector3d::Ones();
  double yaw = 0.0;
  std::string class_label;
  double score = 0.0;
};

struct DetectionRecord {
  std::string frame_id;
  std::vector<DetectionBox> boxes;
};

DetectionRecord detection_record_from_json(const Json& j);
Json to_json(const DetectionRecord& record);

struct ApTable {
  std::vector<double> thresholds;
  /// class -> AP per threshold (same order as thresholds).
  std::map<std::string, std::vector<double>> ap;
  /// class -> mean AP over thresholds.
  std::map<std::string, double> class_ap;
  double mean_ap = 0.0;
};

Json to_json(const ApTable& table);

inline const std::vector<double>& default_bev_thresholds() {
  static const std::vector<double> kThresholds = {0.5, 1.0, 2.0, 4.0};
  return kThresholds;
}

using GroundTruth = std::map<std::string, std::vector<BoxAnnotation>>;

/// BEV centre-distance AP. Classes are those present in the ground truth.
/// Predictions are ranked by score (ties: frame_id, then input order) and
/// greedily matched to the nearest unmatched same-class box within the
/// threshold. AP averages the interpolated precision over recall
/// 0, 0.01, ..., 1 (no low-recall clamp).
ApTable evaluate_bev_map(std::span<const DetectionRecord> predictions, const GroundTruth& ground_truth,
                         std::span<const double> thresholds = default_bev_thresholds());
ApTable evaluate_bev_map(std::span<const DetectionRecord> predictions, std::span<const Frame> ground_truth,
                         std::span<const double> thresholds = default_bev_thresholds());

struct CaseSummary {
  std::string type;
  std::size_t level_count = 0;
  double mean = 0.0;
};

struct RobustnessReport {
  std::string metric_name;
  double clean_score = 0.0;
  std::vector<CaseSummary> cases;  // benchmark column order, then others
  double mean_robust = 0.0;
  double relative = 0.0;
  /// "lidar"/"camera" -> (mP_R, R) over the cases affecting that modality.
  std::map<std::string, std::pair<double, double>> by_modality;
  std::string toolkit_version;
  Json seeds;
  Json parameters;
};

RobustnessGrid grid_from_json(const Json& j);
RobustnessReport build_report(const RobustnessGrid& grid, Json seeds = Json::object(),
                              Json parameters = Json::object());
Json to_json(const RobustnessReport& report);
/// One-row Markdown table: P_C, mP_R, R, then the seven case columns.
std::string to_markdown(const RobustnessReport& report);

}  // namespace rfk
