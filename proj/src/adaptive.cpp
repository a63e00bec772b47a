#include "gridloc/adaptive.hpp"

#include <chrono>

namespace gridloc {

RefinementPass refine_pass(const ResolutionLadder& ladder, int level,
                           const MapTrajectory& prev,
                           const std::vector<MeasurementFrame>& frames,
                           const std::vector<Anchor>& anchors,
                           const HmmParams& params) {
  if (level < 1 || level >= ladder.level_count()) {
    throw LevelOutOfRangeError("refine_pass level must be in [1, r)");
  }
  if (prev.length() != static_cast<int>(frames.size())) {
    throw LengthMismatchError("previous trajectory length != frame count");
  }

  const GridSpec& grid = ladder.levels[level];
  RefinementPass pass;
  pass.level = level;
  pass.candidate_sets.reserve(frames.size());
  for (int cell : prev.cells) {
    pass.candidate_sets.push_back(children(ladder, level - 1, cell));
  }

  auto as_active = [](const std::array<int, 4>& set) {
    return std::vector<int>(set.begin(), set.end());
  };
  std::vector<int> active = as_active(pass.candidate_sets[0]);
  pass.trellis = init_column(grid, frames[0], anchors, params, &active);
  for (std::size_t t = 1; t < frames.size(); ++t) {
    active = as_active(pass.candidate_sets[t]);
    step(pass.trellis, frames[t], anchors, params, &active);
  }
  pass.trajectory = backtrack(pass.trellis);
  pass.trajectory.level = level;
  return pass;
}

AdaptiveResult decode_adaptive(const ResolutionLadder& ladder,
                               const std::vector<MeasurementFrame>& frames,
                               const std::vector<Anchor>& anchors,
                               const HmmParams& params) {
  if (frames.empty()) throw EmptyFrameError("decode_adaptive() needs frames");
  params.validate();

  AdaptiveResult result;

  // Pass 1: conventional decode over the full coarsest grid.
  RefinementPass coarse;
  coarse.level = 0;
  coarse.trellis = init_column(ladder.coarsest(), frames[0], anchors, params);
  for (std::size_t t = 1; t < frames.size(); ++t) {
    step(coarse.trellis, frames[t], anchors, params);
  }
  coarse.trajectory = backtrack(coarse.trellis);
  coarse.trajectory.level = 0;
  result.counters += coarse.trellis.counters;
  result.passes.push_back(std::move(coarse));

  for (int level = 1; level < ladder.level_count(); ++level) {
    RefinementPass pass = refine_pass(ladder, level,
                                      result.passes.back().trajectory, frames,
                                      anchors, params);
    result.counters += pass.trellis.counters;
    result.passes.push_back(std::move(pass));
  }

  result.final = result.passes.back().trajectory;
  return result;
}

std::vector<Vec2> decode_adaptive_online(
    const ResolutionLadder& ladder, const std::vector<MeasurementFrame>& frames,
    const std::vector<Anchor>& anchors, const HmmParams& params) {
  std::vector<Vec2> estimates;
  estimates.reserve(frames.size());
  std::vector<MeasurementFrame> prefix;
  prefix.reserve(frames.size());
  for (const MeasurementFrame& frame : frames) {
    prefix.push_back(frame);
    estimates.push_back(
        decode_adaptive(ladder, prefix, anchors, params).final.positions.back());
  }
  return estimates;
}

DivergenceReport compare_decodes(const GridSpec& grid_fine,
                                 const ResolutionLadder& ladder,
                                 const std::vector<MeasurementFrame>& frames,
                                 const std::vector<Anchor>& anchors,
                                 const HmmParams& params) {
  if (!(grid_fine == ladder.finest())) {
    throw ValidationError("grid_fine must equal the ladder's finest level");
  }
  using clock = std::chrono::steady_clock;

  const auto t0 = clock::now();
  DecodeResult conventional = decode(grid_fine, frames, anchors, params,
                                     /*keep_history=*/false);
  const auto t1 = clock::now();
  AdaptiveResult adaptive = decode_adaptive(ladder, frames, anchors, params);
  const auto t2 = clock::now();

  DivergenceReport report;
  double sum = 0.0;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    sum += (adaptive.final.positions[t] - conventional.trajectory.positions[t])
               .norm();
  }
  report.mean_distance = sum / static_cast<double>(frames.size());
  report.conventional = conventional.counters;
  report.adaptive = adaptive.counters;
  report.conventional_seconds =
      std::chrono::duration<double>(t1 - t0).count();
  report.adaptive_seconds = std::chrono::duration<double>(t2 - t1).count();
  return report;
}

}  // namespace gridloc
