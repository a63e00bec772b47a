#include "gridloc/preprocess.hpp"

#include <cmath>
#include <map>

namespace gridloc {

RangeSeries reject_outliers(const RangeSeries& series, double threshold) {
  if (threshold <= 0.0) throw ValidationError("outlier threshold must be > 0");
  RangeSeries out = series;
  double last_valid = 0.0;
  bool have_valid = false;
  for (RangeSample& sample : out.samples) {
    if (!sample.valid) continue;
    if (have_valid && std::abs(sample.range - last_valid) > threshold) {
      sample.valid = false;
      continue;
    }
    last_valid = sample.range;
    have_valid = true;
  }
  return out;
}

RangeSeries smooth(const RangeSeries& series, int window) {
  if (window < 1) throw ValidationError("smoothing window must be >= 1");
  RangeSeries out;
  out.anchor_id = series.anchor_id;
  std::vector<double> recent;  // valid ranges, oldest first
  for (const RangeSample& sample : series.samples) {
    if (!sample.valid) continue;
    recent.push_back(sample.range);
    const int n = std::min<int>(window, static_cast<int>(recent.size()));
    double sum = 0.0;
    for (int i = static_cast<int>(recent.size()) - n;
         i < static_cast<int>(recent.size()); ++i) {
      sum += recent[i];
    }
    out.samples.push_back({sample.time, sum / n, true});
  }
  return out;
}

std::vector<MeasurementFrame> preprocess_frames(
    const std::vector<MeasurementFrame>& frames,
    const PreprocessConfig& config) {
  std::map<int, RangeSeries> by_anchor;
  for (const MeasurementFrame& frame : frames) {
    for (const auto& [id, range] : frame.ranges) {
      RangeSeries& series = by_anchor[id];
      series.anchor_id = id;
      series.samples.push_back({frame.time, range, true});
    }
  }

  std::map<double, MeasurementFrame> by_time;
  for (auto& [id, series] : by_anchor) {
    const RangeSeries cleaned =
        smooth(reject_outliers(series, config.outlier_threshold),
               config.smoothing_window);
    for (const RangeSample& sample : cleaned.samples) {
      MeasurementFrame& frame = by_time[sample.time];
      frame.time = sample.time;
      frame.add_range(id, sample.range);
    }
  }

  std::vector<MeasurementFrame> out;
  out.reserve(by_time.size());
  for (auto& [time, frame] : by_time) out.push_back(std::move(frame));
  return out;
}

}  // namespace gridloc
