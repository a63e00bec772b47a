#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridloc/preprocess.hpp"
#include "gridloc/sim.hpp"

namespace gridloc {

// CSV schemas (meters, seconds, '.' decimal point, >= 9 significant digits):
//   anchors.csv:    id,x,y
//   ranges.csv:     t,anchor_id,range
//   truth.csv:      t,x,y
//   trajectory.csv: t,x,y,cell_index,level

void write_anchors_csv(const std::filesystem::path& path,
                       const std::vector<Anchor>& anchors);
std::vector<Anchor> read_anchors_csv(const std::filesystem::path& path);

void write_ranges_csv(const std::filesystem::path& path,
                      const std::vector<MeasurementFrame>& frames);
/// Rows are grouped into frames by timestamp, tolerance 1e-6 s.
std::vector<MeasurementFrame> read_ranges_csv(const std::filesystem::path& path);

void write_truth_csv(const std::filesystem::path& path,
                     const std::vector<TimedPosition>& truth);
std::vector<TimedPosition> read_truth_csv(const std::filesystem::path& path);

struct TrajectoryRecord {
  double time = 0.0;
  Vec2 position{0.0, 0.0};
  int cell_index = -1;  // -1 for continuous-state estimators
  int level = -1;
};

void write_trajectory_csv(const std::filesystem::path& path,
                          const std::vector<TrajectoryRecord>& records);
std::vector<TrajectoryRecord> read_trajectory_csv(
    const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& value);
nlohmann::json read_json(const std::filesystem::path& path);

struct BenchCase {
  double width = 8.0;
  double height = 8.0;
  double finest_resolution = 0.1;
  int levels = 4;
  int horizon = 300;
};

struct BenchConfig {
  std::vector<BenchCase> cases;
  std::vector<std::string> estimators{"viterbi", "adaptive"};
  int repetitions = 1;
};

/// Everything a run needs: workspace, grid ladder, model parameters,
/// estimator selection, preprocessing, seed, events. Defaults follow the
/// 8x8 m / 3-anchor indoor setup.
struct RunConfig {
  Vec2 origin{0.0, 0.0};
  double width = 8.0;
  double height = 8.0;
  double finest_resolution = 0.1;
  int levels = 4;  // 1 selects a single grid
  HmmParams params;
  std::string estimator = "adaptive";
  PreprocessConfig preprocess;
  bool preprocess_enabled = true;
  std::uint64_t seed = 0;
  std::vector<EventWindow> events;
  std::vector<Anchor> anchors;
  std::vector<Vec2> waypoints;
  double ekf_init_bias_fraction = 0.1;  // per-coordinate init bias vs truth
  int particle_count = 0;               // 0: default to the coarse cell count
  BenchConfig bench;

  void validate() const;
};

/// Parses a RunConfig, reporting unknown values with the offending field
/// path. Throws ValidationError / ParseError.
RunConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

std::string format_number(double value);

}  // namespace gridloc
