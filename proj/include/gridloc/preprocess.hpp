#pragma once

#include <vector>

#include "gridloc/models.hpp"

namespace gridloc {

struct RangeSample {
  double time = 0.0;
  double range = 0.0;
  bool valid = true;
};

/// Time-ordered per-anchor range stream.
struct RangeSeries {
  int anchor_id = 0;
  std::vector<RangeSample> samples;
};

/// Flags sample t invalid iff |o_t - o_last_valid| exceeds the threshold.
/// The first sample is always valid. Idempotent.
RangeSeries reject_outliers(const RangeSeries& series, double threshold);

/// Causal moving average: each valid sample becomes the unweighted mean of
/// the up-to-`window` most recent valid samples at or before it. Invalid
/// samples are dropped from the output.
RangeSeries smooth(const RangeSeries& series, int window);

struct PreprocessConfig {
  double outlier_threshold = 1.0;  // m
  int smoothing_window = 10;       // samples
};

/// Splits frames into per-anchor series, applies outlier rejection then
/// smoothing, and regroups by time. Rejected samples leave a gap in their
/// frame (the anchor is simply absent).
std::vector<MeasurementFrame> preprocess_frames(
    const std::vector<MeasurementFrame>& frames, const PreprocessConfig& config);

}  // namespace gridloc
