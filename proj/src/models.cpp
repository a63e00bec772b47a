#include "gridloc/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gridloc {

void HmmParams::validate() const {
  if (sigma_x <= 0.0) throw ValidationError("params.sigma_x must be > 0");
  if (sigma_o <= 0.0) throw ValidationError("params.sigma_o must be > 0");
  if (sample_interval <= 0.0)
    throw ValidationError("params.sample_interval must be > 0");
  if (speed < 0.0) throw ValidationError("params.speed must be >= 0");
}

void MeasurementFrame::add_range(int anchor_id, double range) {
  if (range < 0.0) throw ValidationError("range must be nonnegative");
  auto it = std::lower_bound(
      ranges.begin(), ranges.end(), anchor_id,
      [](const auto& r, int id) { return r.first < id; });
  if (it != ranges.end() && it->first == anchor_id) {
    throw ValidationError("duplicate range for anchor " +
                          std::to_string(anchor_id));
  }
  ranges.insert(it, {anchor_id, range});
}

double transition_logprob(const GridSpec& grid, int from, int to,
                          const HmmParams& params) {
  // Displacement from index deltas, not center differences: the value then
  // depends only on (|dix|, |diy|) bit-for-bit, which lets the decoder
  // memoize the kernel on large grids.
  const double dx = (grid.cell_x(to) - grid.cell_x(from)) * grid.resolution;
  const double dy = (grid.cell_y(to) - grid.cell_y(from)) * grid.resolution;
  const double dist = std::sqrt(dx * dx + dy * dy);
  const double residual = dist - params.sample_interval * params.speed;
  return -(residual * residual) / (2.0 * params.sigma_x * params.sigma_x);
}

std::vector<std::pair<const Anchor*, double>> resolve_ranges(
    const MeasurementFrame& frame, const std::vector<Anchor>& anchors) {
  if (frame.empty()) throw EmptyFrameError("frame has no ranges");
  std::vector<std::pair<const Anchor*, double>> resolved;
  resolved.reserve(frame.ranges.size());
  for (const auto& [id, range] : frame.ranges) {
    auto it = std::find_if(anchors.begin(), anchors.end(),
                           [id = id](const Anchor& a) { return a.id == id; });
    if (it == anchors.end()) {
      throw UnknownAnchorError("range references undeclared anchor " +
                               std::to_string(id));
    }
    resolved.push_back({&*it, range});
  }
  return resolved;
}

namespace {

// Per-anchor Gaussian log terms at the given position, frame order.
std::vector<double> anchor_log_terms(
    const Vec2& center,
    const std::vector<std::pair<const Anchor*, double>>& resolved,
    const HmmParams& params) {
  const double inv_two_var = 1.0 / (2.0 * params.sigma_o * params.sigma_o);
  std::vector<double> terms;
  terms.reserve(resolved.size());
  for (const auto& [anchor, range] : resolved) {
    const double predicted = (center - anchor->position).norm();
    const double residual = range - predicted;
    terms.push_back(-(residual * residual) * inv_two_var);
  }
  return terms;
}

// Best 3-subset by exhaustive enumeration in lexicographic order; strict
// improvement keeps the first (smallest id set) maximizer.
template <typename OnBest>
double best_three_sum(const std::vector<double>& terms, OnBest&& on_best) {
  const int n = static_cast<int>(terms.size());
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < n - 2; ++a)
    for (int b = a + 1; b < n - 1; ++b)
      for (int c = b + 1; c < n; ++c) {
        const double sum = terms[a] + terms[b] + terms[c];
        if (sum > best) {
          best = sum;
          on_best(a, b, c);
        }
      }
  return best;
}

}  // namespace

double observation_logprob_point(const Vec2& position,
                                 const MeasurementFrame& frame,
                                 const std::vector<Anchor>& anchors,
                                 const HmmParams& params) {
  const auto resolved = resolve_ranges(frame, anchors);
  const auto terms = anchor_log_terms(position, resolved, params);
  if (terms.size() <= 3) {
    double sum = 0.0;
    for (double t : terms) sum += t;
    return sum;
  }
  return best_three_sum(terms, [](int, int, int) {});
}

double observation_logprob(const GridSpec& grid, int cell,
                           const MeasurementFrame& frame,
                           const std::vector<Anchor>& anchors,
                           const HmmParams& params) {
  return observation_logprob_point(grid.cell_center(cell), frame, anchors,
                                   params);
}

std::array<int, 3> best_anchor_subset_point(const Vec2& position,
                                            const MeasurementFrame& frame,
                                            const std::vector<Anchor>& anchors,
                                            const HmmParams& params) {
  const auto resolved = resolve_ranges(frame, anchors);
  if (resolved.size() <= 3) {
    throw NotEnoughAnchorsError("subset selection needs more than 3 ranges");
  }
  const auto terms = anchor_log_terms(position, resolved, params);
  std::array<int, 3> pick{};
  best_three_sum(terms, [&](int a, int b, int c) {
    pick = {resolved[a].first->id, resolved[b].first->id,
            resolved[c].first->id};
  });
  return pick;
}

std::array<int, 3> best_anchor_subset(const GridSpec& grid, int cell,
                                      const MeasurementFrame& frame,
                                      const std::vector<Anchor>& anchors,
                                      const HmmParams& params) {
  return best_anchor_subset_point(grid.cell_center(cell), frame, anchors,
                                  params);
}

}  // namespace gridloc
