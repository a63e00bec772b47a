#pragma once

#include <optional>

#include "gridloc/adaptive.hpp"
#include "gridloc/baselines.hpp"
#include "gridloc/io.hpp"
#include "gridloc/metrics.hpp"

namespace gridloc {

/// One decoded run of any estimator over a frame stream.
struct RunOutput {
  std::string estimator;
  std::vector<TrajectoryRecord> records;
  DecodeCounters counters;
  double wall_time_seconds = 0.0;
  std::optional<double> rmse_m;
  std::optional<double> lce_m;
  std::vector<double> step_errors;  // empty without truth
  int interpolated_frames = 0;      // trilateration only
  int degeneracy_resets = 0;        // pf only
};

/// Random closed waypoint loop inside the workspace, `margin` meters from
/// the walls. Deterministic per seed.
std::vector<Vec2> random_waypoints(const Vec2& origin, double width,
                                   double height, double margin, int count,
                                   std::uint64_t seed);

/// Builds truth + frames from the config (waypoints, anchors, events, seed).
/// When the config has no waypoints a random loop is generated.
Scenario simulate_scenario(const RunConfig& config);

/// Preprocesses (when enabled) and decodes with the configured estimator.
/// `truth` is optional and only used for error metrics and EKF/E-RTS
/// initialization.
RunOutput run_estimator(const RunConfig& config,
                        const std::vector<Anchor>& anchors,
                        const std::vector<MeasurementFrame>& frames,
                        const std::vector<TimedPosition>* truth);

nlohmann::json make_report(const RunConfig& config, const RunOutput& output);

struct BenchRow {
  std::string estimator;
  int cell_count = 0;
  int levels = 0;
  int horizon = 0;
  double mean_wall_time_seconds = 0.0;
  std::uint64_t transitions = 0;
  std::uint64_t table_cells = 0;  // paper-convention memorization accounting
};

std::vector<BenchRow> run_bench(const RunConfig& config);

}  // namespace gridloc
