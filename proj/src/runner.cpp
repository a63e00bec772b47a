#include "gridloc/runner.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace gridloc {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::vector<double> frame_times(const std::vector<MeasurementFrame>& frames) {
  std::vector<double> times;
  times.reserve(frames.size());
  for (const auto& frame : frames) times.push_back(frame.time);
  return times;
}

void attach_metrics(RunOutput& output,
                    const std::vector<MeasurementFrame>& frames,
                    const std::vector<TimedPosition>* truth) {
  std::vector<Vec2> estimate;
  estimate.reserve(output.records.size());
  for (const auto& r : output.records) estimate.push_back(r.position);
  if (estimate.size() >= 2) output.lce_m = loop_closure_error(estimate);
  if (!truth || truth->empty()) return;
  const std::vector<Vec2> aligned = resample_truth(*truth, frame_times(frames));
  output.step_errors = per_step_errors(estimate, aligned);
  output.rmse_m = rmse(estimate, aligned);
}

std::vector<TrajectoryRecord> cells_to_records(
    const std::vector<MeasurementFrame>& frames, const MapTrajectory& trajectory,
    int level) {
  std::vector<TrajectoryRecord> records;
  records.reserve(frames.size());
  for (std::size_t t = 0; t < frames.size(); ++t) {
    records.push_back({frames[t].time, trajectory.positions[t],
                       trajectory.cells[t], level});
  }
  return records;
}

std::vector<TrajectoryRecord> positions_to_records(
    const std::vector<MeasurementFrame>& frames,
    const std::vector<Vec2>& positions) {
  std::vector<TrajectoryRecord> records;
  records.reserve(frames.size());
  for (std::size_t t = 0; t < frames.size(); ++t) {
    records.push_back({frames[t].time, positions[t], -1, -1});
  }
  return records;
}

KinematicState ekf_init_state(const RunConfig& config,
                              const std::vector<Anchor>& anchors,
                              const std::vector<MeasurementFrame>& frames,
                              const std::vector<TimedPosition>* truth) {
  KinematicState init;
  if (truth && !truth->empty()) {
    init.state.head<2>() =
        truth->front().position * (1.0 + config.ekf_init_bias_fraction);
  } else {
    for (const auto& frame : frames) {
      if (frame.connected_count() >= 3) {
        init.state.head<2>() = trilaterate(frame, anchors);
        break;
      }
    }
  }
  init.covariance = Eigen::Vector4d(0.25, 0.25, 0.25, 0.25).asDiagonal();
  return init;
}

int default_particle_count(const RunConfig& config) {
  // N1, the coarse-level cell count.
  const ResolutionLadder ladder =
      build_ladder(config.origin, config.width, config.height,
                   config.finest_resolution, config.levels);
  return ladder.coarsest().cell_count();
}

}  // namespace

std::vector<Vec2> random_waypoints(const Vec2& origin, double width,
                                   double height, double margin, int count,
                                   std::uint64_t seed) {
  if (count < 2) throw ValidationError("need at least 2 waypoints");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(origin.x() + margin,
                                            origin.x() + width - margin);
  std::uniform_real_distribution<double> uy(origin.y() + margin,
                                            origin.y() + height - margin);
  std::vector<Vec2> waypoints;
  waypoints.reserve(count);
  for (int i = 0; i < count - 1; ++i) waypoints.push_back({ux(rng), uy(rng)});
  waypoints.push_back(waypoints.front());  // closed loop
  return waypoints;
}

Scenario simulate_scenario(const RunConfig& config) {
  if (config.anchors.empty()) {
    throw ValidationError("anchors: scenario needs at least one anchor");
  }
  Scenario scenario;
  scenario.origin = config.origin;
  scenario.width = config.width;
  scenario.height = config.height;
  scenario.sample_interval = config.params.sample_interval;
  scenario.anchors = config.anchors;
  scenario.events = config.events;

  std::vector<Vec2> waypoints = config.waypoints;
  if (waypoints.empty()) {
    const double margin = std::min(config.width, config.height) * 0.15;
    waypoints = random_waypoints(config.origin, config.width, config.height,
                                 margin, 8, config.seed ^ 0x9e3779b97f4a7c15ULL);
  }
  scenario.truth = gen_trajectory(waypoints, config.params.speed,
                                  config.params.sample_interval);
  scenario.frames = simulate_ranges(scenario.truth, scenario.anchors,
                                    config.params.sigma_o, scenario.events,
                                    config.seed);
  return scenario;
}

RunOutput run_estimator(const RunConfig& config,
                        const std::vector<Anchor>& anchors,
                        const std::vector<MeasurementFrame>& raw_frames,
                        const std::vector<TimedPosition>* truth) {
  config.validate();
  if (raw_frames.empty()) {
    throw ValidationError("no measurement frames to decode");
  }
  const std::vector<MeasurementFrame> frames =
      config.preprocess_enabled
          ? preprocess_frames(raw_frames, config.preprocess)
          : raw_frames;
  if (frames.empty()) {
    throw ValidationError("preprocessing removed every frame");
  }

  RunOutput output;
  output.estimator = config.estimator;
  const auto start = clock_type::now();

  if (config.estimator == "viterbi") {
    if (config.levels != 1) {
      throw ValidationError(
          "estimator 'viterbi' takes a single grid; set grid.levels = 1");
    }
    const GridSpec grid = build_grid(config.origin, config.width, config.height,
                                     config.finest_resolution);
    DecodeResult result =
        decode(grid, frames, anchors, config.params, /*keep_history=*/false);
    output.wall_time_seconds = seconds_since(start);
    output.counters = result.counters;
    output.records = cells_to_records(frames, result.trajectory, 0);
  } else if (config.estimator == "adaptive") {
    const ResolutionLadder ladder =
        build_ladder(config.origin, config.width, config.height,
                     config.finest_resolution, config.levels);
    AdaptiveResult result =
        decode_adaptive(ladder, frames, anchors, config.params);
    output.wall_time_seconds = seconds_since(start);
    output.counters = result.counters;
    output.records =
        cells_to_records(frames, result.final, ladder.level_count() - 1);
  } else if (config.estimator == "trilateration") {
    TrilaterationTrack track = trilaterate_track(frames, anchors);
    output.wall_time_seconds = seconds_since(start);
    output.records = positions_to_records(frames, track.positions);
    for (bool flag : track.interpolated) {
      output.interpolated_frames += flag ? 1 : 0;
    }
  } else if (config.estimator == "ekf" || config.estimator == "erts") {
    const KinematicState init = ekf_init_state(config, anchors, frames, truth);
    EkfTrack track = ekf_track(frames, anchors, init, config.params);
    std::vector<KinematicState> states =
        config.estimator == "erts" ? rts_smooth(track) : track.filtered;
    output.wall_time_seconds = seconds_since(start);
    std::vector<Vec2> positions;
    positions.reserve(states.size());
    for (const auto& s : states) positions.push_back(s.position());
    output.records = positions_to_records(frames, positions);
  } else if (config.estimator == "pf") {
    const int count = config.particle_count > 0 ? config.particle_count
                                                : default_particle_count(config);
    PfTrack track = pf_track(frames, anchors, config.origin, config.width,
                             config.height, count, config.params, config.seed);
    output.wall_time_seconds = seconds_since(start);
    output.records = positions_to_records(frames, track.positions);
    output.degeneracy_resets = track.degeneracy_resets;
  } else {
    throw ValidationError("estimator: unknown value '" + config.estimator +
                          "' (expected viterbi|adaptive|trilateration|ekf|"
                          "erts|pf)");
  }

  attach_metrics(output, frames, truth);
  return output;
}

nlohmann::json make_report(const RunConfig& config, const RunOutput& output) {
  nlohmann::json report;
  report["estimator"] = output.estimator;
  report["rmse_m"] =
      output.rmse_m ? nlohmann::json(*output.rmse_m) : nlohmann::json();
  report["lce_m"] =
      output.lce_m ? nlohmann::json(*output.lce_m) : nlohmann::json();
  report["transitions"] = output.counters.transitions;
  report["observations"] = output.counters.observations;
  report["backpointer_cells"] = output.counters.backpointer_cells;
  report["wall_time_s"] = output.wall_time_seconds;
  report["params"] = {{"sigma_x", config.params.sigma_x},
                      {"sigma_o", config.params.sigma_o},
                      {"sample_interval", config.params.sample_interval},
                      {"speed", config.params.speed}};
  if (!output.step_errors.empty()) {
    report["per_step_errors"] = output.step_errors;
  }
  if (output.estimator == "trilateration") {
    report["interpolated_frames"] = output.interpolated_frames;
  }
  if (output.estimator == "pf") {
    report["degeneracy_resets"] = output.degeneracy_resets;
  }
  return report;
}

std::vector<BenchRow> run_bench(const RunConfig& config) {
  std::vector<BenchRow> rows;
  int case_index = 0;
  for (const BenchCase& bench_case : config.bench.cases) {
    RunConfig scenario_config = config;
    scenario_config.width = bench_case.width;
    scenario_config.height = bench_case.height;
    scenario_config.finest_resolution = bench_case.finest_resolution;
    scenario_config.levels = bench_case.levels;
    scenario_config.seed = config.seed + static_cast<std::uint64_t>(case_index);
    scenario_config.waypoints.clear();
    if (scenario_config.anchors.empty()) {
      // Anchors at three workspace corners.
      scenario_config.anchors = {
          {1, scenario_config.origin},
          {2, scenario_config.origin + Vec2(bench_case.width, 0.0)},
          {3, scenario_config.origin + Vec2(0.0, bench_case.height)}};
    }

    // Grow the walk until the horizon is covered, then truncate.
    Scenario scenario = simulate_scenario(scenario_config);
    int waypoint_count = 8;
    while (static_cast<int>(scenario.frames.size()) < bench_case.horizon) {
      waypoint_count *= 2;
      if (waypoint_count > 4096) {
        throw ValidationError("bench horizon unreachable at this speed");
      }
      const double margin =
          std::min(bench_case.width, bench_case.height) * 0.15;
      scenario_config.waypoints = random_waypoints(
          scenario_config.origin, bench_case.width, bench_case.height, margin,
          waypoint_count, scenario_config.seed ^ 0x9e3779b97f4a7c15ULL);
      scenario = simulate_scenario(scenario_config);
    }
    scenario.frames.resize(bench_case.horizon);

    for (const std::string& estimator : config.bench.estimators) {
      RunConfig run_config = scenario_config;
      run_config.estimator = estimator;
      run_config.levels = estimator == "viterbi" ? 1 : bench_case.levels;
      run_config.preprocess_enabled = false;

      BenchRow row;
      row.estimator = estimator;
      row.levels = run_config.levels;
      row.horizon = bench_case.horizon;
      double total_seconds = 0.0;
      RunOutput output;
      for (int rep = 0; rep < config.bench.repetitions; ++rep) {
        output = run_estimator(run_config, scenario.anchors, scenario.frames,
                               &scenario.truth);
        total_seconds += output.wall_time_seconds;
      }
      row.mean_wall_time_seconds = total_seconds / config.bench.repetitions;
      row.transitions = output.counters.transitions;

      const GridSpec finest =
          build_grid(config.origin, bench_case.width, bench_case.height,
                     bench_case.finest_resolution);
      row.cell_count = finest.cell_count();
      if (estimator == "viterbi") {
        row.table_cells =
            conventional_table_cells(finest.cell_count(), bench_case.horizon);
      } else if (estimator == "adaptive") {
        const ResolutionLadder ladder = build_ladder(
            config.origin, bench_case.width, bench_case.height,
            bench_case.finest_resolution, bench_case.levels);
        row.table_cells = adaptive_table_cells_all_levels(
            ladder.coarsest().cell_count(), bench_case.levels,
            bench_case.horizon);
      } else {
        row.table_cells = output.counters.backpointer_cells;
      }
      rows.push_back(row);
    }
    ++case_index;
  }
  return rows;
}

}  // namespace gridloc
