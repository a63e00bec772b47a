#include "gridloc/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace gridloc {

std::vector<double> per_step_errors(const std::vector<Vec2>& estimate,
                                    const std::vector<Vec2>& truth) {
  if (estimate.size() != truth.size()) {
    throw LengthMismatchError("estimate and truth must be aligned");
  }
  if (estimate.empty()) throw TooShortError("no positions to compare");
  std::vector<double> errors;
  errors.reserve(estimate.size());
  for (std::size_t t = 0; t < estimate.size(); ++t) {
    errors.push_back((estimate[t] - truth[t]).norm());
  }
  return errors;
}

double rmse(const std::vector<Vec2>& estimate, const std::vector<Vec2>& truth) {
  const auto errors = per_step_errors(estimate, truth);
  double sum_sq = 0.0;
  for (double e : errors) sum_sq += e * e;
  return std::sqrt(sum_sq / static_cast<double>(errors.size()));
}

double loop_closure_error(const std::vector<Vec2>& estimate) {
  if (estimate.empty()) {
    throw TooShortError("loop closure needs at least 1 position");
  }
  return (estimate.back() - estimate.front()).norm();
}

std::vector<Vec2> resample_truth(const std::vector<TimedPosition>& truth,
                                 const std::vector<double>& times) {
  if (truth.empty()) throw TooShortError("truth track is empty");
  std::vector<Vec2> out;
  out.reserve(times.size());
  for (double t : times) {
    auto upper = std::lower_bound(
        truth.begin(), truth.end(), t,
        [](const TimedPosition& s, double time) { return s.time < time; });
    if (upper == truth.begin()) {
      out.push_back(truth.front().position);
    } else if (upper == truth.end()) {
      out.push_back(truth.back().position);
    } else {
      const TimedPosition& hi = *upper;
      const TimedPosition& lo = *(upper - 1);
      const double span = hi.time - lo.time;
      const double alpha = span > 0.0 ? (t - lo.time) / span : 0.0;
      out.push_back(lo.position + alpha * (hi.position - lo.position));
    }
  }
  return out;
}

std::vector<Vec2> resample_truth_nearest(const std::vector<TimedPosition>& truth,
                                         const std::vector<double>& times) {
  if (truth.empty()) throw TooShortError("truth track is empty");
  std::vector<Vec2> out;
  out.reserve(times.size());
  for (double t : times) {
    auto upper = std::lower_bound(
        truth.begin(), truth.end(), t,
        [](const TimedPosition& s, double time) { return s.time < time; });
    if (upper == truth.begin()) {
      out.push_back(truth.front().position);
    } else if (upper == truth.end()) {
      out.push_back(truth.back().position);
    } else {
      const auto& hi = *upper;
      const auto& lo = *(upper - 1);
      out.push_back((t - lo.time) <= (hi.time - t) ? lo.position : hi.position);
    }
  }
  return out;
}

std::uint64_t conventional_table_cells(std::uint64_t cell_count,
                                       std::uint64_t horizon) {
  return cell_count * horizon;
}

std::uint64_t adaptive_table_cells(std::uint64_t coarse_cells,
                                   std::uint64_t levels,
                                   std::uint64_t horizon) {
  return (coarse_cells + 4 * (levels - 1)) * horizon;
}

std::uint64_t adaptive_table_cells_all_levels(std::uint64_t coarse_cells,
                                              std::uint64_t levels,
                                              std::uint64_t horizon) {
  return adaptive_table_cells(coarse_cells, levels, horizon) * levels;
}

std::uint64_t conventional_transitions(std::uint64_t cell_count,
                                       std::uint64_t horizon) {
  return cell_count * cell_count * (horizon - 1);
}

std::uint64_t adaptive_transitions(std::uint64_t coarse_cells,
                                   std::uint64_t levels,
                                   std::uint64_t horizon) {
  return (coarse_cells * coarse_cells + 16 * (levels - 1)) * (horizon - 1);
}

std::uint64_t adaptive_observations(std::uint64_t coarse_cells,
                                    std::uint64_t levels,
                                    std::uint64_t horizon) {
  return (coarse_cells + 4 * (levels - 1)) * horizon;
}

}  // namespace gridloc
