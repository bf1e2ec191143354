#include "rfk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <iomanip>

#include "rfk/corruption_spec.hpp"
#include "rfk/error.hpp"

namespace rfk {

void validate(const RobustnessGrid& grid) {
  if (grid.cells.empty()) {
    fail(ErrorCode::kEmptyGrid, "robustness grid has no cells");
  }
  if (!(grid.clean_score >= 0.0) || !std::isfinite(grid.clean_score)) {
    fail(ErrorCode::kInvalidArgument, "clean score must be finite and >= 0");
  }
  for (const auto& [type, levels] : grid.cells) {
    if (levels.empty()) {
      fail(ErrorCode::kEmptyGrid, "disruption type '" + type + "' has no levels");
    }
    for (const auto& [level, score] : levels) {
      if (!(score >= 0.0) || !std::isfinite(score)) {
        fail(ErrorCode::kInvalidArgument, "score for " + type + "/" + level + " must be finite and >= 0");
      }
    }
  }
}

namespace {

// Offsets from the minimum are summed so that equal inputs return their
// common value bit for bit.
double sorted_mean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const double base = values.front();
  double offset = 0.0;
  for (double v : values) {
    offset += v - base;
  }
  return base + offset / static_cast<double>(values.size());
}

double type_mean(const std::map<std::string, double>& levels) {
  std::vector<double> values;
  values.reserve(levels.size());
  for (const auto& [level, score] : levels) {
    values.push_back(score);
  }
  return sorted_mean(std::move(values));
}

}  // namespace

double mean_robustness(const RobustnessGrid& grid) {
  validate(grid);
  std::vector<double> per_type;
  per_type.reserve(grid.cells.size());
  for (const auto& [type, levels] : grid.cells) {
    per_type.push_back(type_mean(levels));
  }
  return sorted_mean(std::move(per_type));
}

double relative_robustness(double mean_robust, double clean_score) {
  if (!(clean_score > 0.0)) {
    fail(ErrorCode::kZeroCleanScore, "clean score must be > 0");
  }
  return mean_robust / clean_score;
}

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(value * scale + 0.5) / scale;
}

// ---------------------------------------------------------------------------
// BEV centre-distance AP

DetectionRecord detection_record_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("frame_id") || !j.at("frame_id").is_string() || !j.contains("boxes") ||
      !j.at("boxes").is_array()) {
    fail(ErrorCode::kSchemaViolation, "detection record needs frame_id and boxes");
  }
  DetectionRecord record;
  record.frame_id = j.at("frame_id").get<std::string>();
  for (const Json& b : j.at("boxes")) {
    DetectionBox box;
    try {
      const auto c = b.at("center").get<std::array<double, 3>>();
      box.center = {c[0], c[1], c[2]};
      if (b.contains("size")) {
        const auto s = b.at("size").get<std::array<double, 3>>();
        box.size = {s[0], s[1], s[2]};
      }
      box.yaw = b.value("yaw", 0.0);
      box.class_label = b.at("class_label").get<std::string>();
      box.score = b.at("score").get<double>();
    } catch (const Json::exception& e) {
      fail(ErrorCode::kSchemaViolation, "detection box in " + record.frame_id + ": " + e.what());
    }
    if (!(box.score >= 0.0 && box.score <= 1.0)) {
      fail(ErrorCode::kSchemaViolation, "detection score outside [0, 1] in " + record.frame_id);
    }
    record.boxes.push_back(std::move(box));
  }
  return record;
}

Json to_json(const DetectionRecord& record) {
  Json boxes = Json::array();
  for (const DetectionBox& b : record.boxes) {
    boxes.push_back({{"center", {b.center.x(), b.center.y(), b.center.z()}},
                     {"size", {b.size.x(), b.size.y(), b.size.z()}},
                     {"yaw", b.yaw},
                     {"class_label", b.class_label},
                     {"score", b.score}});
  }
  return {{"frame_id", record.frame_id}, {"boxes", std::move(boxes)}};
}

namespace {

struct RankedPrediction {
  const std::string* frame_id;
  std::size_t order;  // global input order
  const DetectionBox* box;
};

double average_precision(std::vector<RankedPrediction> preds, const GroundTruth& gt, const std::string& label,
                         double threshold) {
  std::map<std::string, std::vector<const BoxAnnotation*>> gt_by_frame;
  std::size_t positives = 0;
  for (const auto& [frame_id, boxes] : gt) {
    for (const BoxAnnotation& b : boxes) {
      if (b.class_label == label) {
        gt_by_frame[frame_id].push_back(&b);
        ++positives;
      }
    }
  }
  if (positives == 0) {
    return 0.0;
  }

  std::stable_sort(preds.begin(), preds.end(), [](const RankedPrediction& a, const RankedPrediction& b) {
    if (a.box->score != b.box->score) return a.box->score > b.box->score;
    if (*a.frame_id != *b.frame_id) return *a.frame_id < *b.frame_id;
    return a.order < b.order;
  });

  std::map<std::string, std::vector<bool>> taken;
  for (const auto& [frame_id, boxes] : gt_by_frame) {
    taken[frame_id].assign(boxes.size(), false);
  }

  // Cumulative TP count after each ranked prediction.
  std::vector<std::size_t> tp_after(preds.size());
  std::size_t tp = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const auto it = gt_by_frame.find(*preds[i].frame_id);
    if (it != gt_by_frame.end()) {
      auto& used = taken[it->first];
      std::ptrdiff_t best = -1;
      double best_dist = 0.0;
      for (std::size_t g = 0; g < it->second.size(); ++g) {
        if (used[g]) continue;
        const double dist = std::hypot(preds[i].box->center.x() - it->second[g]->center.x(),
                                       preds[i].box->center.y() - it->second[g]->center.y());
        if (dist <= threshold && (best < 0 || dist < best_dist)) {
          best = static_cast<std::ptrdiff_t>(g);
          best_dist = dist;
        }
      }
      if (best >= 0) {
        used[static_cast<std::size_t>(best)] = true;
        ++tp;
      }
    }
    tp_after[i] = tp;
  }

  // Interpolated precision: running max of precision from the tail.
  std::vector<double> envelope(preds.size());
  double running = 0.0;
  for (std::size_t i = preds.size(); i-- > 0;) {
    running = std::max(running, static_cast<double>(tp_after[i]) / static_cast<double>(i + 1));
    envelope[i] = running;
  }

  // For recall r_j = j / 100, take the envelope at the first rank whose
  // recall reaches r_j (integer test: 100 tp >= j * positives).
  double sum = 0.0;
  std::size_t rank = 0;
  for (std::size_t j = 0; j <= 100; ++j) {
    while (rank < preds.size() && 100 * tp_after[rank] < j * positives) {
      ++rank;
    }
    if (rank < preds.size()) {
      sum += envelope[rank];
    }
  }
  return sum / 101.0;
}

}  // namespace

ApTable evaluate_bev_map(std::span<const DetectionRecord> predictions, const GroundTruth& ground_truth,
                         std::span<const double> thresholds) {
  if (thresholds.empty()) {
    fail(ErrorCode::kInvalidArgument, "at least one distance threshold is required");
  }
  std::set<std::string> labels;
  for (const auto& [frame_id, boxes] : ground_truth) {
    for (const BoxAnnotation& b : boxes) {
      labels.insert(b.class_label);
    }
  }

  std::map<std::string, std::vector<RankedPrediction>> by_label;
  std::size_t order = 0;
  for (const DetectionRecord& record : predictions) {
    if (!ground_truth.contains(record.frame_id)) {
      fail(ErrorCode::kUnknownFrame, record.frame_id);
    }
    for (const DetectionBox& box : record.boxes) {
      if (labels.contains(box.class_label)) {
        by_label[box.class_label].push_back({&record.frame_id, order, &box});
      }
      ++order;
    }
  }

  ApTable table;
  table.thresholds.assign(thresholds.begin(), thresholds.end());
  for (const std::string& label : labels) {
    std::vector<double>& aps = table.ap[label];
    for (double t : thresholds) {
      aps.push_back(average_precision(by_label[label], ground_truth, label, t));
    }
    table.class_ap[label] = std::accumulate(aps.begin(), aps.end(), 0.0) / static_cast<double>(aps.size());
  }
  if (!table.class_ap.empty()) {
    double sum = 0.0;
    for (const auto& [label, ap] : table.class_ap) {
      sum += ap;
    }
    table.mean_ap = sum / static_cast<double>(table.class_ap.size());
  }
  return table;
}

ApTable evaluate_bev_map(std::span<const DetectionRecord> predictions, std::span<const Frame> ground_truth,
                         std::span<const double> thresholds) {
  GroundTruth gt;
  for (const Frame& f : ground_truth) {
    gt[f.frame_id] = f.annotations;
  }
  return evaluate_bev_map(predictions, gt, thresholds);
}

Json to_json(const ApTable& table) {
  Json classes = Json::object();
  for (const auto& [label, aps] : table.ap) {
    classes[label] = {{"ap_per_threshold", aps}, {"ap", table.class_ap.at(label)}};
  }
  return {{"thresholds_m", table.thresholds}, {"classes", std::move(classes)}, {"mAP", table.mean_ap}};
}

// ---------------------------------------------------------------------------
// Reports

RobustnessGrid grid_from_json(const Json& j) {
  RobustnessGrid grid;
  try {
    grid.metric_name = j.at("metric_name").get<std::string>();
    grid.clean_score = j.at("clean").get<double>();
    for (const Json& cell : j.at("cells")) {
      const Json& level = cell.at("level");
      const std::string level_name = level.is_string() ? level.get<std::string>() : level.dump();
      const std::string type = cell.at("type").get<std::string>();
      if (grid.cells[type].contains(level_name)) {
        fail(ErrorCode::kSchemaViolation, "duplicate cell " + type + "/" + level_name);
      }
      grid.add(type, level_name, cell.at("score").get<double>());
    }
  } catch (const Json::exception& e) {
    fail(ErrorCode::kSchemaViolation, std::string("score grid: ") + e.what());
  }
  validate(grid);
  return grid;
}

RobustnessReport build_report(const RobustnessGrid& grid, Json seeds, Json parameters) {
  validate(grid);
  RobustnessReport report;
  report.metric_name = grid.metric_name;
  report.clean_score = grid.clean_score;
  report.toolkit_version = RFK_VERSION_STRING;
  report.seeds = std::move(seeds);
  report.parameters = std::move(parameters);

  std::set<std::string> placed;
  const auto summarize = [&](const std::string& type) {
    const auto& levels = grid.cells.at(type);
    report.cases.push_back({type, levels.size(), type_mean(levels)});
    placed.insert(type);
  };
  for (CorruptionCase c : kAllCases) {
    const std::string name(case_name(c));
    if (grid.cells.contains(name)) {
      summarize(name);
    }
  }
  for (const auto& [type, levels] : grid.cells) {
    if (!placed.contains(type)) {
      summarize(type);
    }
  }

  report.mean_robust = mean_robustness(grid);
  report.relative = relative_robustness(report.mean_robust, grid.clean_score);

  for (Modality m : {Modality::kLidar, Modality::kCamera}) {
    RobustnessGrid sub;
    sub.clean_score = grid.clean_score;
    for (CorruptionCase c : kAllCases) {
      const std::string name(case_name(c));
      if (affected_modality(c) == m && grid.cells.contains(name)) {
        sub.cells[name] = grid.cells.at(name);
      }
    }
    if (!sub.cells.empty()) {
      const double mean = mean_robustness(sub);
      report.by_modality[std::string(to_string(m))] = {
          mean, grid.clean_score > 0.0 ? relative_robustness(mean, grid.clean_score) : 0.0};
    }
  }
  return report;
}

Json to_json(const RobustnessReport& r) {
  Json cases = Json::array();
  for (const CaseSummary& c : r.cases) {
    cases.push_back({{"type", c.type}, {"levels", c.level_count}, {"mean", c.mean}});
  }
  Json modality = Json::object();
  for (const auto& [name, values] : r.by_modality) {
    modality[name] = {{"mP_R", values.first}, {"R", values.second}};
  }
  return {{"metric_name", r.metric_name},
          {"P_C", r.clean_score},
          {"mP_R", r.mean_robust},
          {"R", r.relative},
          {"cases", std::move(cases)},
          {"by_modality", std::move(modality)},
          {"level_averaging", "per-type"},
          {"toolkit_version", r.toolkit_version},
          {"seeds", r.seeds},
          {"parameters", r.parameters}};
}

std::string to_markdown(const RobustnessReport& r) {
  static const std::pair<CorruptionCase, const char*> kColumns[] = {
      {CorruptionCase::kLidarStuck, "Stuck (L)"},    {CorruptionCase::kLimitFov, "FOV"},
      {CorruptionCase::kObjectFailure, "Object"},    {CorruptionCase::kCameraStuck, "Stuck (C)"},
      {CorruptionCase::kMissingCamera, "Missing"},   {CorruptionCase::kLensOcclusion, "Occlusion"},
      {CorruptionCase::kSpatialMisalign, "Calib"},
  };
  std::map<std::string, double> means;
  for (const CaseSummary& c : r.cases) {
    means[c.type] = c.mean;
  }
  std::vector<std::string> extras;
  for (const CaseSummary& c : r.cases) {
    if (!parse_case(c.type)) {
      extras.push_back(c.type);
    }
  }

  std::ostringstream out;
  out << std::fixed;
  out << "| Metric | P_C | mP_R | R |";
  for (const auto& [c, title] : kColumns) out << ' ' << title << " |";
  for (const std::string& e : extras) out << ' ' << e << " |";
  out << "\n|---|---|---|---|";
  for (std::size_t i = 0; i < std::size(kColumns) + extras.size(); ++i) out << "---|";
  out << "\n| " << r.metric_name << " | " << std::setprecision(1) << round_half_up(r.clean_score, 1) << " | "
      << round_half_up(r.mean_robust, 1) << " | " << std::setprecision(2) << round_half_up(r.relative, 2) << " |";
  out << std::setprecision(1);
  for (const auto& [c, title] : kColumns) {
    const auto it = means.find(std::string(case_name(c)));
    if (it == means.end()) {
      out << " - |";
    } else {
      out << ' ' << round_half_up(it->second, 1) << " |";
    }
  }
  for (const std::string& e : extras) out << ' ' << round_half_up(means.at(e), 1) << " |";
  out << '\n';
  return out.str();
}

}  // namespace rfk
