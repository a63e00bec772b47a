#pragma once

#include <array>
#include <utility>
#include <vector>

#include "gridloc/grid.hpp"

namespace gridloc {

/// Motion/observation model parameters. Defaults follow the indoor walking
/// setup: sigma_x = 1.5 m, sigma_o = 0.5 m, 10 Hz sampling, 0.5 m/s speed.
struct HmmParams {
  double sigma_x = 1.5;          // motion std dev (m)
  double sigma_o = 0.5;          // range std dev (m)
  double sample_interval = 0.1;  // T_s (s)
  double speed = 0.5;            // assumed constant speed v_c (m/s)

  void validate() const;
  bool operator==(const HmmParams&) const = default;
};

struct Anchor {
  int id = 0;
  Vec2 position{0.0, 0.0};
};

/// One time step of per-anchor range measurements. Ranges are stored sorted
/// by anchor id, at most one per anchor.
struct MeasurementFrame {
  double time = 0.0;
  std::vector<std::pair<int, double>> ranges;  // (anchor id, range m)

  void add_range(int anchor_id, double range);
  bool empty() const { return ranges.empty(); }
  int connected_count() const { return static_cast<int>(ranges.size()); }
};

/// Log transition kernel between two cells of the same grid:
///   -(||c_to - c_from|| - T_s * v_c)^2 / (2 sigma_x^2).
/// Unnormalized; the maximum value is 0.
double transition_logprob(const GridSpec& grid, int from, int to,
                          const HmmParams& params);

/// Log observation likelihood of a frame at an arbitrary 2D position, with
/// the same best-3 subset rule as the cell version.
double observation_logprob_point(const Vec2& position,
                                 const MeasurementFrame& frame,
                                 const std::vector<Anchor>& anchors,
                                 const HmmParams& params);

/// Log observation likelihood of a frame given the target in `cell`.
/// With at most 3 connected anchors this is the sum of the per-anchor
/// Gaussian log terms; with more, the best 3-anchor subset is used.
double observation_logprob(const GridSpec& grid, int cell,
                           const MeasurementFrame& frame,
                           const std::vector<Anchor>& anchors,
                           const HmmParams& params);

/// The 3-anchor subset realizing observation_logprob when more than three
/// anchors are connected. Ties break toward the lexicographically smallest
/// id set. Throws NotEnoughAnchorsError when the frame has <= 3 ranges.
std::array<int, 3> best_anchor_subset(const GridSpec& grid, int cell,
                                      const MeasurementFrame& frame,
                                      const std::vector<Anchor>& anchors,
                                      const HmmParams& params);

/// Point-position variant of best_anchor_subset.
std::array<int, 3> best_anchor_subset_point(const Vec2& position,
                                            const MeasurementFrame& frame,
                                            const std::vector<Anchor>& anchors,
                                            const HmmParams& params);

/// Resolves anchor ids in a frame against the declared anchor list. Throws
/// UnknownAnchorError / EmptyFrameError.
std::vector<std::pair<const Anchor*, double>> resolve_ranges(
    const MeasurementFrame& frame, const std::vector<Anchor>& anchors);

}  // namespace gridloc
