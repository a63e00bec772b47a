#include "gridloc/sim.hpp"

#include <cmath>
#include <random>

namespace gridloc {

std::vector<TimedPosition> gen_trajectory(const std::vector<Vec2>& waypoints,
                                          double speed,
                                          double sample_interval) {
  if (waypoints.size() < 2) throw ValidationError("need at least 2 waypoints");
  if (speed <= 0.0) throw ValidationError("speed must be > 0");
  if (sample_interval <= 0.0) throw ValidationError("sample interval must be > 0");

  std::vector<double> cumulative{0.0};
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    cumulative.push_back(cumulative.back() +
                         (waypoints[i] - waypoints[i - 1]).norm());
  }
  const double total_length = cumulative.back();
  if (total_length <= 0.0) throw ZeroLengthPathError("waypoints have zero length");

  const double duration = total_length / speed;
  const double exact_steps = duration / sample_interval;
  int steps = static_cast<int>(std::ceil(exact_steps - 1e-9));

  auto at_arclength = [&](double s) -> Vec2 {
    s = std::min(s, total_length);
    std::size_t seg = 1;
    while (seg < cumulative.size() - 1 && cumulative[seg] < s) ++seg;
    const double seg_len = cumulative[seg] - cumulative[seg - 1];
    const double alpha = seg_len > 0.0 ? (s - cumulative[seg - 1]) / seg_len : 0.0;
    return waypoints[seg - 1] + alpha * (waypoints[seg] - waypoints[seg - 1]);
  };

  std::vector<TimedPosition> out;
  out.reserve(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    const double t = k * sample_interval;
    out.push_back({t, at_arclength(t * speed)});
  }
  return out;
}

std::vector<MeasurementFrame> simulate_ranges(
    const std::vector<TimedPosition>& truth, const std::vector<Anchor>& anchors,
    double sigma_o, const std::vector<EventWindow>& events,
    std::uint64_t seed) {
  if (sigma_o < 0.0) throw ValidationError("sigma_o must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit_noise(0.0, 1.0);

  auto active_event = [&](int anchor_id, double t,
                          EventWindow::Kind kind) -> const EventWindow* {
    for (const EventWindow& e : events) {
      if (e.anchor_id == anchor_id && e.kind == kind && t >= e.t_start &&
          t <= e.t_end) {
        return &e;
      }
    }
    return nullptr;
  };

  std::vector<MeasurementFrame> frames;
  frames.reserve(truth.size());
  for (const TimedPosition& sample : truth) {
    MeasurementFrame frame;
    frame.time = sample.time;
    for (const Anchor& anchor : anchors) {
      // One noise draw per (t, anchor) keeps the stream deterministic even
      // when dropout windows change.
      const double noise = sigma_o * unit_noise(rng);
      if (active_event(anchor.id, sample.time, EventWindow::Kind::Dropout)) {
        continue;
      }
      double range = (sample.position - anchor.position).norm() + noise;
      if (const EventWindow* bias =
              active_event(anchor.id, sample.time, EventWindow::Kind::Bias)) {
        range += bias->bias;
      }
      frame.add_range(anchor.id, std::max(0.0, range));
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

}  // namespace gridloc
