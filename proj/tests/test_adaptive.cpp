#include <doctest.h>

#include <cmath>
#include <random>

#include "gridloc/adaptive.hpp"

using namespace gridloc;

namespace {

std::vector<Anchor> corner_anchors(double extent) {
  return {{1, {0, 0}}, {2, {extent, 0}}, {3, {0, extent}}, {4, {extent, extent}}};
}

std::vector<MeasurementFrame> noisy_frames(const std::vector<Anchor>& anchors,
                                           double extent, int horizon,
                                           std::uint32_t seed,
                                           double noise_amp = 0.3) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> pos(0.2, extent - 0.2);
  std::uniform_real_distribution<double> step(-0.1, 0.1);
  std::uniform_real_distribution<double> noise(-noise_amp, noise_amp);
  Vec2 target{pos(rng), pos(rng)};
  std::vector<MeasurementFrame> frames;
  for (int t = 0; t < horizon; ++t) {
    target.x() = std::clamp(target.x() + step(rng), 0.1, extent - 0.1);
    target.y() = std::clamp(target.y() + step(rng), 0.1, extent - 0.1);
    MeasurementFrame frame;
    frame.time = 0.1 * t;
    for (const Anchor& a : anchors) {
      frame.add_range(a.id,
                      std::max(0.0, (target - a.position).norm() + noise(rng)));
    }
    frames.push_back(frame);
  }
  return frames;
}

}  // namespace

TEST_CASE("a one-level ladder reproduces the conventional decode") {
  const double extent = 4.0;
  const ResolutionLadder ladder = build_ladder({0, 0}, extent, extent, 1.0, 1);
  const auto anchors = corner_anchors(extent);
  const auto frames = noisy_frames(anchors, extent, 5, 17);
  HmmParams params;

  const AdaptiveResult adaptive = decode_adaptive(ladder, frames, anchors,
                                                  params);
  const DecodeResult conventional = decode(ladder.levels[0], frames, anchors,
                                           params);
  CHECK(adaptive.final.cells == conventional.trajectory.cells);
  CHECK(adaptive.counters.transitions == conventional.counters.transitions);
  CHECK(adaptive.counters.backpointer_cells ==
        conventional.counters.backpointer_cells);
  REQUIRE(adaptive.passes.size() == 1);
  CHECK(adaptive.passes[0].candidate_sets.empty());
}

TEST_CASE("each refined cell is a child of the previous pass's cell") {
  const double extent = 4.0;
  const ResolutionLadder ladder = build_ladder({0, 0}, extent, extent, 0.5, 3);
  const auto anchors = corner_anchors(extent);
  const auto frames = noisy_frames(anchors, extent, 8, 29);
  HmmParams params;

  const AdaptiveResult result = decode_adaptive(ladder, frames, anchors,
                                                params);
  REQUIRE(result.passes.size() == 3);
  for (std::size_t k = 1; k < result.passes.size(); ++k) {
    const RefinementPass& pass = result.passes[k];
    const MapTrajectory& prev = result.passes[k - 1].trajectory;
    CHECK(pass.level == static_cast<int>(k));
    REQUIRE(pass.candidate_sets.size() == frames.size());
    for (std::size_t t = 0; t < frames.size(); ++t) {
      const auto expected = children(ladder, static_cast<int>(k) - 1,
                                     prev.cells[t]);
      CHECK(pass.candidate_sets[t] == expected);
      CHECK(parent(ladder, static_cast<int>(k), pass.trajectory.cells[t]) ==
            prev.cells[t]);
    }
  }
  CHECK(result.final.cells == result.passes.back().trajectory.cells);
  CHECK(result.final.level == 2);
}

TEST_CASE("adaptive counters follow the closed-form laws") {
  const double extent = 4.0;
  const auto anchors = corner_anchors(extent);
  HmmParams params;
  for (int levels : {2, 3}) {
    const ResolutionLadder ladder =
        build_ladder({0, 0}, extent, extent, extent / (4 << levels), levels);
    const std::uint64_t n1 = ladder.coarsest().cell_count();
    for (int horizon : {1, 2, 6}) {
      const auto frames = noisy_frames(anchors, extent, horizon, 41);
      const AdaptiveResult result = decode_adaptive(ladder, frames, anchors,
                                                    params);
      const std::uint64_t t = horizon;
      const std::uint64_t r = levels;
      CHECK(result.counters.transitions ==
            n1 * n1 * (t - 1) + 16 * (r - 1) * (t - 1));
      CHECK(result.counters.backpointer_cells == (n1 + 4 * (r - 1)) * t);
      CHECK(result.counters.observations == (n1 + 4 * (r - 1)) * t);
    }
  }
}

TEST_CASE("a refinement pass is optimal over its candidate sets") {
  const double extent = 4.0;
  const ResolutionLadder ladder = build_ladder({0, 0}, extent, extent, 1.0, 2);
  const auto anchors = corner_anchors(extent);
  const auto frames = noisy_frames(anchors, extent, 5, 71);
  HmmParams params;

  const AdaptiveResult result = decode_adaptive(ladder, frames, anchors,
                                                params);
  const RefinementPass& pass = result.passes[1];
  const GridSpec& fine = ladder.levels[1];
  const int horizon = static_cast<int>(frames.size());

  // Independent oracle: enumerate all 4^T sequences drawn from the candidate
  // sets; ties to the lexicographically smallest sequence.
  std::vector<int> best_cells;
  double best_score = -std::numeric_limits<double>::infinity();
  const std::uint64_t total = std::uint64_t{1} << (2 * horizon);
  std::vector<int> cells(horizon);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (int t = 0; t < horizon; ++t) {
      cells[t] = pass.candidate_sets[t][rest & 3];
      rest >>= 2;
    }
    const double score =
        trajectory_score(fine, frames, anchors, params, cells);
    if (score > best_score ||
        (score == best_score && cells < best_cells)) {
      best_score = score;
      best_cells = cells;
    }
  }
  CHECK(pass.trajectory.cells == best_cells);
  CHECK(trajectory_score(fine, frames, anchors, params,
                         pass.trajectory.cells) == best_score);
}

TEST_CASE("the restricted optimum never beats the unrestricted one") {
  const double extent = 4.0;
  const ResolutionLadder ladder = build_ladder({0, 0}, extent, extent, 1.0, 2);
  const auto anchors = corner_anchors(extent);
  HmmParams params;
  for (std::uint32_t seed = 0; seed < 6; ++seed) {
    const auto frames = noisy_frames(anchors, extent, 6, 200 + seed, 0.6);
    const AdaptiveResult adaptive = decode_adaptive(ladder, frames, anchors,
                                                    params);
    const DecodeResult full = decode(ladder.levels[1], frames, anchors, params);
    const double adaptive_score = trajectory_score(
        ladder.levels[1], frames, anchors, params, adaptive.final.cells);
    const double full_score = trajectory_score(
        ladder.levels[1], frames, anchors, params, full.trajectory.cells);
    CHECK(adaptive_score <= full_score + 1e-12);
  }
}

TEST_CASE("noiseless stationary target: adaptive matches conventional exactly") {
  const double extent = 4.0;
  const ResolutionLadder ladder = build_ladder({0, 0}, extent, extent, 0.25, 3);
  const auto anchors = corner_anchors(extent);
  HmmParams params;
  params.speed = 0.0;
  const GridSpec& fine = ladder.finest();
  const Vec2 center = fine.cell_center(fine.index(5, 9));
  std::vector<MeasurementFrame> frames;
  for (int t = 0; t < 6; ++t) {
    MeasurementFrame frame;
    frame.time = 0.1 * t;
    for (const Anchor& a : anchors) {
      frame.add_range(a.id, (center - a.position).norm());
    }
    frames.push_back(frame);
  }
  const DivergenceReport report = compare_decodes(fine, ladder, frames,
                                                  anchors, params);
  CHECK(report.mean_distance == 0.0);
  CHECK(report.adaptive.transitions < report.conventional.transitions);
  CHECK(report.adaptive.backpointer_cells <
        report.conventional.backpointer_cells);
  CHECK(report.conventional_seconds >= 0.0);
  CHECK(report.adaptive_seconds >= 0.0);
}

TEST_CASE("online mode agrees with the batch decode on the full horizon") {
  const double extent = 4.0;
  const ResolutionLadder ladder = build_ladder({0, 0}, extent, extent, 0.5, 2);
  const auto anchors = corner_anchors(extent);
  const auto frames = noisy_frames(anchors, extent, 5, 91);
  HmmParams params;

  const std::vector<Vec2> online = decode_adaptive_online(ladder, frames,
                                                          anchors, params);
  REQUIRE(online.size() == frames.size());
  const AdaptiveResult batch = decode_adaptive(ladder, frames, anchors, params);
  CHECK(online.back() == batch.final.positions.back());
  // Each online estimate is a valid finest-level cell center.
  for (const Vec2& p : online) {
    CHECK(ladder.finest().cell_center(locate(ladder.finest(), p)) == p);
  }
}

TEST_CASE("empty input is rejected") {
  const ResolutionLadder ladder = build_ladder({0, 0}, 4, 4, 1.0, 2);
  const auto anchors = corner_anchors(4.0);
  HmmParams params;
  CHECK_THROWS_AS(decode_adaptive(ladder, {}, anchors, params),
                  EmptyFrameError);
}
