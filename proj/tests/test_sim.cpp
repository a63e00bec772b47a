#include <doctest.h>

#include <cmath>

#include "gridloc/sim.hpp"

using namespace gridloc;

namespace {

std::vector<Anchor> square_anchors() {
  return {{1, {0, 0}}, {2, {8, 0}}, {3, {0, 8}}, {4, {8, 8}}};
}

}  // namespace

TEST_CASE("a 1 m segment at 1 m/s sampled at 0.05 s gives 21 samples") {
  const auto truth = gen_trajectory({{0, 0}, {1, 0}}, 1.0, 0.05);
  REQUIRE(truth.size() == 21);
  CHECK(truth.front().position == Vec2{0, 0});
  CHECK((truth.back().position - Vec2{1, 0}).norm() < 1e-12);
  for (std::size_t t = 0; t < truth.size(); ++t) {
    CHECK(truth[t].time == doctest::Approx(0.05 * t));
    CHECK(truth[t].position.x() == doctest::Approx(0.05 * t));
    CHECK(truth[t].position.y() == doctest::Approx(0.0));
  }
}

TEST_CASE("speed is constant across waypoint corners") {
  const auto truth = gen_trajectory({{0, 0}, {2, 0}, {2, 2}}, 0.5, 0.1);
  for (std::size_t t = 1; t < truth.size() - 1; ++t) {
    const double step = (truth[t].position - truth[t - 1].position).norm();
    CHECK(step == doctest::Approx(0.05).epsilon(1e-9));
  }
  CHECK((truth.back().position - Vec2{2, 2}).norm() < 1e-9);
}

TEST_CASE("closed waypoint loops start and end at the same point") {
  const std::vector<Vec2> loop{{1, 1}, {7, 1}, {7, 7}, {1, 7}, {1, 1}};
  const auto truth = gen_trajectory(loop, 0.5, 0.1);
  CHECK((truth.front().position - truth.back().position).norm() < 1e-9);
  // Total duration = perimeter / speed = 24 / 0.5 = 48 s.
  CHECK(truth.back().time == doctest::Approx(48.0));
  CHECK(truth.size() == 481);
}

TEST_CASE("gen_trajectory validation") {
  CHECK_THROWS_AS(gen_trajectory({{0, 0}}, 1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(gen_trajectory({{0, 0}, {1, 0}}, 0.0, 0.1), ValidationError);
  CHECK_THROWS_AS(gen_trajectory({{0, 0}, {1, 0}}, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(gen_trajectory({{0, 0}, {0, 0}}, 1.0, 0.1),
                  ZeroLengthPathError);
}

TEST_CASE("noiseless simulation returns exact distances to every anchor") {
  const auto anchors = square_anchors();
  const auto truth = gen_trajectory({{1, 1}, {6, 5}}, 0.5, 0.1);
  const auto frames = simulate_ranges(truth, anchors, 0.0, {}, 9);
  REQUIRE(frames.size() == truth.size());
  for (std::size_t t = 0; t < frames.size(); ++t) {
    CHECK(frames[t].time == truth[t].time);
    REQUIRE(frames[t].ranges.size() == anchors.size());
    for (std::size_t j = 0; j < anchors.size(); ++j) {
      const double expected =
          (truth[t].position - anchors[j].position).norm();
      CHECK(frames[t].ranges[j].second == doctest::Approx(expected));
    }
  }
}

TEST_CASE("simulation is deterministic per seed") {
  const auto anchors = square_anchors();
  const auto truth = gen_trajectory({{1, 1}, {6, 5}}, 0.5, 0.1);
  const auto a = simulate_ranges(truth, anchors, 0.5, {}, 123);
  const auto b = simulate_ranges(truth, anchors, 0.5, {}, 123);
  REQUIRE(a.size() == b.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    CHECK(a[t].ranges == b[t].ranges);
  }
  const auto c = simulate_ranges(truth, anchors, 0.5, {}, 124);
  CHECK(a[0].ranges != c[0].ranges);
}

TEST_CASE("a dropout window removes exactly that anchor's samples") {
  const auto anchors = square_anchors();
  const auto truth = gen_trajectory({{1, 1}, {6, 1}}, 0.5, 0.1);  // 10 s
  EventWindow dropout;
  dropout.anchor_id = 3;
  dropout.t_start = 2.0;
  dropout.t_end = 4.0;
  const auto frames = simulate_ranges(truth, anchors, 0.1, {dropout}, 5);
  for (const MeasurementFrame& frame : frames) {
    const bool inside = frame.time >= 2.0 && frame.time <= 4.0;
    bool has3 = false;
    for (const auto& [id, range] : frame.ranges) {
      if (id == 3) has3 = true;
    }
    CHECK(has3 == !inside);
    CHECK(frame.ranges.size() == (inside ? 3u : 4u));
  }
}

TEST_CASE("dropout windows do not perturb the surviving anchors' noise") {
  const auto anchors = square_anchors();
  const auto truth = gen_trajectory({{1, 1}, {6, 1}}, 0.5, 0.1);
  EventWindow dropout;
  dropout.anchor_id = 2;
  dropout.t_start = 1.0;
  dropout.t_end = 3.0;
  const auto plain = simulate_ranges(truth, anchors, 0.3, {}, 77);
  const auto dropped = simulate_ranges(truth, anchors, 0.3, {dropout}, 77);
  for (std::size_t t = 0; t < plain.size(); ++t) {
    for (const auto& [id, range] : dropped[t].ranges) {
      bool found = false;
      for (const auto& [pid, prange] : plain[t].ranges) {
        if (pid == id) {
          CHECK(prange == range);
          found = true;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("a bias window shifts that anchor's mean range") {
  const auto anchors = square_anchors();
  const auto truth = gen_trajectory({{4, 4}, {4.001, 4}}, 0.0001, 0.1);
  EventWindow bias;
  bias.anchor_id = 1;
  bias.t_start = 0.0;
  bias.t_end = 1e9;
  bias.kind = EventWindow::Kind::Bias;
  bias.bias = 2.0;
  const auto frames = simulate_ranges(truth, anchors, 0.0, {bias}, 3);
  for (const MeasurementFrame& frame : frames) {
    const double expected =
        (Vec2{4, 4} - anchors[0].position).norm() + 2.0;
    CHECK(frame.ranges[0].second == doctest::Approx(expected).epsilon(1e-3));
    CHECK(frame.ranges[1].second ==
          doctest::Approx((Vec2{4, 4} - anchors[1].position).norm())
              .epsilon(1e-3));
  }
}

TEST_CASE("noise statistics match the requested sigma within 5 percent") {
  const std::vector<Anchor> anchors{{1, {0, 0}}};
  std::vector<TimedPosition> truth;
  for (int t = 0; t < 20000; ++t) truth.push_back({0.1 * t, {5.0, 0.0}});
  const auto frames = simulate_ranges(truth, anchors, 0.5, {}, 2026);
  double sum = 0.0, sum_sq = 0.0;
  for (const MeasurementFrame& frame : frames) {
    const double residual = frame.ranges[0].second - 5.0;
    sum += residual;
    sum_sq += residual * residual;
  }
  const double n = static_cast<double>(frames.size());
  const double mean = sum / n;
  const double stddev = std::sqrt(sum_sq / n - mean * mean);
  CHECK(std::abs(mean) < 0.025);
  CHECK(stddev == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("ranges are clamped at zero") {
  const std::vector<Anchor> anchors{{1, {0, 0}}};
  std::vector<TimedPosition> truth;
  for (int t = 0; t < 500; ++t) truth.push_back({0.1 * t, {0.01, 0.0}});
  const auto frames = simulate_ranges(truth, anchors, 1.0, {}, 8);
  bool clamped = false;
  for (const MeasurementFrame& frame : frames) {
    CHECK(frame.ranges[0].second >= 0.0);
    if (frame.ranges[0].second == 0.0) clamped = true;
  }
  CHECK(clamped);
}
