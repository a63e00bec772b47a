#pragma once

#include <cstdint>
#include <vector>

#include "gridloc/models.hpp"

namespace gridloc {

struct TimedPosition {
  double time = 0.0;
  Vec2 position{0.0, 0.0};
};

/// Scheduled measurement corruption for one anchor.
struct EventWindow {
  enum class Kind { Dropout, Bias };
  int anchor_id = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  Kind kind = Kind::Dropout;
  double bias = 0.0;  // m, added before noise (Bias only)
};

struct Scenario {
  Vec2 origin{0.0, 0.0};
  double width = 0.0;
  double height = 0.0;
  double sample_interval = 0.1;
  std::vector<Anchor> anchors;
  std::vector<TimedPosition> truth;
  std::vector<MeasurementFrame> frames;
  std::vector<EventWindow> events;
};

/// Constant-speed piecewise-linear path through the waypoints, sampled every
/// sample_interval. The final sample is clamped to the last waypoint so the
/// endpoints are hit exactly.
std::vector<TimedPosition> gen_trajectory(const std::vector<Vec2>& waypoints,
                                          double speed,
                                          double sample_interval);

/// Ranges o = ||p - P_k|| + bias + N(0, sigma_o^2), clamped at 0; samples
/// inside a dropout window are omitted. Deterministic for a fixed seed.
std::vector<MeasurementFrame> simulate_ranges(
    const std::vector<TimedPosition>& truth, const std::vector<Anchor>& anchors,
    double sigma_o, const std::vector<EventWindow>& events, std::uint64_t seed);

}  // namespace gridloc
