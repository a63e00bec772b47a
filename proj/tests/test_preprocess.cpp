#include <doctest.h>

#include <random>

#include "gridloc/preprocess.hpp"

using namespace gridloc;

namespace {

RangeSeries make_series(std::initializer_list<double> ranges, int anchor_id = 1,
                        double interval = 0.1) {
  RangeSeries series;
  series.anchor_id = anchor_id;
  int t = 0;
  for (double r : ranges) {
    series.samples.push_back({t * interval, r, true});
    ++t;
  }
  return series;
}

std::vector<double> valid_ranges(const RangeSeries& series) {
  std::vector<double> out;
  for (const RangeSample& s : series.samples) {
    if (s.valid) out.push_back(s.range);
  }
  return out;
}

}  // namespace

TEST_CASE("a spike beyond the threshold is dropped, the next sample kept") {
  const RangeSeries series = make_series({5.0, 5.1, 9.0, 5.2});
  const RangeSeries cleaned = reject_outliers(series, 1.0);
  REQUIRE(cleaned.samples.size() == 4);
  CHECK(cleaned.samples[0].valid);
  CHECK(cleaned.samples[1].valid);
  CHECK_FALSE(cleaned.samples[2].valid);
  // 5.2 is compared against the last valid sample 5.1, not against 9.0.
  CHECK(cleaned.samples[3].valid);
}

TEST_CASE("consecutive spikes are all dropped against the last valid value") {
  const RangeSeries series = make_series({5.0, 9.0, 9.1, 9.2, 5.3});
  const RangeSeries cleaned = reject_outliers(series, 1.0);
  CHECK(valid_ranges(cleaned) == std::vector<double>{5.0, 5.3});
}

TEST_CASE("the first sample is always kept") {
  const RangeSeries series = make_series({100.0, 5.0, 5.1});
  const RangeSeries cleaned = reject_outliers(series, 1.0);
  CHECK(cleaned.samples[0].valid);
  CHECK_FALSE(cleaned.samples[1].valid);  // 5.0 vs last valid 100.0
}

TEST_CASE("rejection at exactly the threshold keeps the sample") {
  const RangeSeries series = make_series({5.0, 6.0, 6.0 + 1.0 + 1e-9});
  const RangeSeries cleaned = reject_outliers(series, 1.0);
  CHECK(cleaned.samples[1].valid);
  CHECK_FALSE(cleaned.samples[2].valid);
}

TEST_CASE("reject_outliers is idempotent") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(4.0, 10.0);
  RangeSeries series;
  series.anchor_id = 2;
  for (int t = 0; t < 50; ++t) series.samples.push_back({0.1 * t, u(rng), true});
  const RangeSeries once = reject_outliers(series, 1.0);
  const RangeSeries twice = reject_outliers(once, 1.0);
  REQUIRE(once.samples.size() == twice.samples.size());
  for (std::size_t i = 0; i < once.samples.size(); ++i) {
    CHECK(once.samples[i].valid == twice.samples[i].valid);
    CHECK(once.samples[i].range == twice.samples[i].range);
  }
}

TEST_CASE("smoothing a ramp gives running prefix means") {
  const RangeSeries smoothed = smooth(make_series({1.0, 2.0, 3.0, 4.0}), 10);
  REQUIRE(smoothed.samples.size() == 4);
  CHECK(smoothed.samples[0].range == doctest::Approx(1.0));
  CHECK(smoothed.samples[1].range == doctest::Approx(1.5));
  CHECK(smoothed.samples[2].range == doctest::Approx(2.0));
  CHECK(smoothed.samples[3].range == doctest::Approx(2.5));
}

TEST_CASE("the window caps how far back the mean reaches") {
  const RangeSeries smoothed = smooth(make_series({1.0, 2.0, 3.0, 4.0}), 2);
  CHECK(smoothed.samples[0].range == doctest::Approx(1.0));
  CHECK(smoothed.samples[1].range == doctest::Approx(1.5));
  CHECK(smoothed.samples[2].range == doctest::Approx(2.5));
  CHECK(smoothed.samples[3].range == doctest::Approx(3.5));
}

TEST_CASE("a window of 1 is the identity on valid samples") {
  const RangeSeries series = make_series({5.0, 7.0, 6.0});
  const RangeSeries smoothed = smooth(series, 1);
  CHECK(valid_ranges(smoothed) == std::vector<double>{5.0, 7.0, 6.0});
  CHECK_THROWS_AS(smooth(series, 0), ValidationError);
}

TEST_CASE("smoothing skips invalid samples and preserves timestamps") {
  RangeSeries series = make_series({2.0, 100.0, 4.0});
  series.samples[1].valid = false;
  const RangeSeries smoothed = smooth(series, 10);
  REQUIRE(smoothed.samples.size() == 2);
  CHECK(smoothed.samples[0].time == doctest::Approx(0.0));
  CHECK(smoothed.samples[1].time == doctest::Approx(0.2));
  CHECK(smoothed.samples[1].range == doctest::Approx(3.0));  // mean of 2 and 4
}

TEST_CASE("smoothing is causal: later samples never change earlier outputs") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(1.0, 9.0);
  RangeSeries series;
  for (int t = 0; t < 30; ++t) series.samples.push_back({0.1 * t, u(rng), true});
  const RangeSeries full = smooth(series, 5);
  for (std::size_t cut = 1; cut <= series.samples.size(); ++cut) {
    RangeSeries prefix;
    prefix.samples.assign(series.samples.begin(),
                          series.samples.begin() + cut);
    const RangeSeries partial = smooth(prefix, 5);
    for (std::size_t i = 0; i < partial.samples.size(); ++i) {
      CHECK(partial.samples[i].range == full.samples[i].range);
    }
  }
}

TEST_CASE("preprocess_frames leaves a gap where a range was rejected") {
  std::vector<MeasurementFrame> frames;
  const double clean[] = {5.0, 5.1, 5.2, 5.3};
  const double spiky[] = {4.0, 4.1, 9.5, 4.2};
  for (int t = 0; t < 4; ++t) {
    MeasurementFrame frame;
    frame.time = 0.1 * t;
    frame.add_range(1, clean[t]);
    frame.add_range(2, spiky[t]);
    frames.push_back(frame);
  }
  PreprocessConfig config;
  config.outlier_threshold = 1.0;
  config.smoothing_window = 1;
  const auto out = preprocess_frames(frames, config);
  REQUIRE(out.size() == 4);
  CHECK(out[2].ranges.size() == 1);  // anchor 2's spike removed
  CHECK(out[2].ranges[0].first == 1);
  CHECK(out[3].ranges.size() == 2);
  CHECK(out[3].ranges[1].second == doctest::Approx(4.2));
}

TEST_CASE("preprocess_frames smooths per anchor independently") {
  std::vector<MeasurementFrame> frames;
  for (int t = 0; t < 3; ++t) {
    MeasurementFrame frame;
    frame.time = 0.1 * t;
    frame.add_range(1, 1.0 + t);  // 1, 2, 3
    frame.add_range(2, 10.0);     // constant
    frames.push_back(frame);
  }
  PreprocessConfig config;
  config.outlier_threshold = 100.0;
  config.smoothing_window = 10;
  const auto out = preprocess_frames(frames, config);
  CHECK(out[2].ranges[0].second == doctest::Approx(2.0));
  CHECK(out[2].ranges[1].second == doctest::Approx(10.0));
  CHECK(out[2].time == doctest::Approx(0.2));
}

TEST_CASE("a frame whose every range is rejected is dropped entirely") {
  std::vector<MeasurementFrame> frames;
  const double spiky[] = {4.0, 9.5, 4.1};
  for (int t = 0; t < 3; ++t) {
    MeasurementFrame frame;
    frame.time = 0.1 * t;
    frame.add_range(1, spiky[t]);
    frames.push_back(frame);
  }
  PreprocessConfig config;
  config.outlier_threshold = 1.0;
  config.smoothing_window = 1;
  const auto out = preprocess_frames(frames, config);
  REQUIRE(out.size() == 2);
  CHECK(out[0].time == doctest::Approx(0.0));
  CHECK(out[1].time == doctest::Approx(0.2));
}
