#pragma once

#include <cstdint>
#include <vector>

#include "gridloc/sim.hpp"
#include "gridloc/viterbi.hpp"

namespace gridloc {

struct EvalReport {
  double rmse = 0.0;  // m
  double lce = 0.0;   // m
  std::vector<double> per_step_errors;
  DecodeCounters counters;
  double wall_time_seconds = 0.0;
};

/// Root mean squared Euclidean position error; sequences must be aligned.
double rmse(const std::vector<Vec2>& estimate, const std::vector<Vec2>& truth);

/// Euclidean distance between the first and last estimated positions.
double loop_closure_error(const std::vector<Vec2>& estimate);

std::vector<double> per_step_errors(const std::vector<Vec2>& estimate,
                                    const std::vector<Vec2>& truth);

/// Linear interpolation of a truth track at the requested times (clamped at
/// the ends). Resolves sampling-rate mismatch between reference and ranges.
std::vector<Vec2> resample_truth(const std::vector<TimedPosition>& truth,
                                 const std::vector<double>& times);

/// Nearest-time alternative to resample_truth.
std::vector<Vec2> resample_truth_nearest(const std::vector<TimedPosition>& truth,
                                         const std::vector<double>& times);

// Closed-form memorization-table and transition accounting. Integer exact.
std::uint64_t conventional_table_cells(std::uint64_t cell_count,
                                       std::uint64_t horizon);
std::uint64_t adaptive_table_cells(std::uint64_t coarse_cells,
                                   std::uint64_t levels, std::uint64_t horizon);
/// The published convention additionally multiplies by the level count,
/// charging each of the r per-level trajectories.
std::uint64_t adaptive_table_cells_all_levels(std::uint64_t coarse_cells,
                                              std::uint64_t levels,
                                              std::uint64_t horizon);
std::uint64_t conventional_transitions(std::uint64_t cell_count,
                                       std::uint64_t horizon);
std::uint64_t adaptive_transitions(std::uint64_t coarse_cells,
                                   std::uint64_t levels, std::uint64_t horizon);
std::uint64_t adaptive_observations(std::uint64_t coarse_cells,
                                    std::uint64_t levels,
                                    std::uint64_t horizon);

}  // namespace gridloc
