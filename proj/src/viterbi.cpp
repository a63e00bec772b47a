#include "gridloc/viterbi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gridloc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> observation_column(const GridSpec& grid,
                                       const MeasurementFrame& frame,
                                       const std::vector<Anchor>& anchors,
                                       const HmmParams& params,
                                       const std::vector<int>& active) {
  std::vector<double> column;
  if (active.empty()) {
    column.reserve(grid.cell_count());
    for (int i = 0; i < grid.cell_count(); ++i) {
      column.push_back(observation_logprob(grid, i, frame, anchors, params));
    }
  } else {
    column.reserve(active.size());
    for (int i : active) {
      column.push_back(observation_logprob(grid, i, frame, anchors, params));
    }
  }
  return column;
}

void ensure_kernel_cache(std::vector<double>& cache,
                         std::optional<HmmParams>& cached_params,
                         const GridSpec& grid, const HmmParams& params) {
  if (cached_params && *cached_params == params &&
      cache.size() == static_cast<std::size_t>(grid.cell_count())) {
    return;
  }
  cache.assign(grid.cell_count(), 0.0);
  const int base = grid.index(0, 0);
  for (int dy = 0; dy < grid.ny; ++dy) {
    for (int dx = 0; dx < grid.nx; ++dx) {
      cache[dy * grid.nx + dx] =
          transition_logprob(grid, base, grid.index(dx, dy), params);
    }
  }
  cached_params = params;
}

// Full-grid argmax of rho(j) + kernel(j -> i) for every destination i.
// The kernel depends only on the absolute index deltas, so one cached row
// per |diy| serves a whole scan line. Ascending j with strict improvement
// keeps ties on the smallest predecessor index.
void full_grid_step(const GridSpec& grid, const std::vector<double>& prev,
                    const std::vector<double>& kernel,
                    std::vector<double>& best, std::vector<int>& best_from) {
  const int nx = grid.nx;
  const int ny = grid.ny;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      double b = kNegInf;
      int from = 0;
      for (int jy = 0; jy < ny; ++jy) {
        const double* krow = kernel.data() + std::abs(jy - iy) * nx;
        const double* prow = prev.data() + jy * nx;
        int jx = 0;
        for (; jx < ix; ++jx) {
          const double v = prow[jx] + krow[ix - jx];
          if (v > b) {
            b = v;
            from = jy * nx + jx;
          }
        }
        for (; jx < nx; ++jx) {
          const double v = prow[jx] + krow[jx - ix];
          if (v > b) {
            b = v;
            from = jy * nx + jx;
          }
        }
      }
      best[iy * nx + ix] = b;
      best_from[iy * nx + ix] = from;
    }
  }
}

}  // namespace

Trellis init_column(const GridSpec& grid, const MeasurementFrame& frame,
                    const std::vector<Anchor>& anchors,
                    const HmmParams& params,
                    const std::vector<int>* active_cells, bool keep_history) {
  Trellis trellis;
  trellis.grid = grid;
  trellis.keep_history = keep_history;
  std::vector<int> active = active_cells ? *active_cells : std::vector<int>{};
  trellis.scores.push_back(
      observation_column(grid, frame, anchors, params, active));
  // Sentinel self-pointers; the first column has no predecessor.
  std::vector<int> sentinel;
  const int n = active.empty() ? grid.cell_count()
                               : static_cast<int>(active.size());
  sentinel.reserve(n);
  for (int slot = 0; slot < n; ++slot) {
    sentinel.push_back(active.empty() ? slot : active[slot]);
  }
  trellis.backptrs.push_back(std::move(sentinel));
  trellis.active.push_back(std::move(active));
  trellis.counters.observations += n;
  trellis.counters.backpointer_cells += n;
  return trellis;
}

void step(Trellis& trellis, const MeasurementFrame& frame,
          const std::vector<Anchor>& anchors, const HmmParams& params,
          const std::vector<int>* active_cells) {
  if (trellis.column_count() == 0) {
    throw EmptyTrellisError("step() needs an initialized trellis");
  }
  if (frame.empty()) throw EmptyFrameError("frame has no ranges");

  const GridSpec& grid = trellis.grid;
  const int prev_col = trellis.column_count() - 1;
  const std::vector<double>& prev = trellis.last_scores();
  const std::vector<int>& prev_active = trellis.active[prev_col];
  std::vector<int> next_active =
      active_cells ? *active_cells : std::vector<int>{};

  const int n_prev = prev_active.empty() ? grid.cell_count()
                                         : static_cast<int>(prev_active.size());
  const int n_next = next_active.empty() ? grid.cell_count()
                                         : static_cast<int>(next_active.size());

  std::vector<double> best(n_next, kNegInf);
  std::vector<int> best_from(n_next, 0);

  if (prev_active.empty() && next_active.empty()) {
    ensure_kernel_cache(trellis.kernel_cache_, trellis.kernel_params_, grid,
                        params);
    full_grid_step(grid, prev, trellis.kernel_cache_, best, best_from);
  } else {
    for (int slot = 0; slot < n_next; ++slot) {
      const int dest = next_active.empty() ? slot : next_active[slot];
      for (int pslot = 0; pslot < n_prev; ++pslot) {
        const int src = prev_active.empty() ? pslot : prev_active[pslot];
        const double v = prev[pslot] + transition_logprob(grid, src, dest, params);
        if (v > best[slot]) {
          best[slot] = v;
          best_from[slot] = src;
        }
      }
    }
  }

  std::vector<double> column =
      observation_column(grid, frame, anchors, params, next_active);
  for (int slot = 0; slot < n_next; ++slot) column[slot] += best[slot];

  if (!trellis.keep_history) trellis.scores.back().clear();
  trellis.scores.push_back(std::move(column));
  trellis.backptrs.push_back(std::move(best_from));
  trellis.active.push_back(std::move(next_active));
  trellis.counters.transitions +=
      static_cast<std::uint64_t>(n_prev) * static_cast<std::uint64_t>(n_next);
  trellis.counters.observations += n_next;
  trellis.counters.backpointer_cells += n_next;
}

MapTrajectory backtrack(const Trellis& trellis) {
  const int columns = trellis.column_count();
  if (columns == 0) throw EmptyTrellisError("backtrack() on empty trellis");

  const std::vector<double>& last = trellis.last_scores();
  int best_slot = 0;
  for (int slot = 1; slot < static_cast<int>(last.size()); ++slot) {
    if (last[slot] > last[best_slot]) best_slot = slot;
  }

  MapTrajectory out;
  out.cells.assign(columns, 0);
  out.cells.back() = trellis.active_cell(columns - 1, best_slot);
  for (int t = columns - 1; t > 0; --t) {
    const std::vector<int>& column_active = trellis.active[t];
    int slot;
    if (column_active.empty()) {
      slot = out.cells[t];
    } else {
      slot = static_cast<int>(
          std::find(column_active.begin(), column_active.end(), out.cells[t]) -
          column_active.begin());
    }
    out.cells[t - 1] = trellis.backptrs[t][slot];
  }
  out.positions.reserve(columns);
  for (int cell : out.cells) {
    out.positions.push_back(trellis.grid.cell_center(cell));
  }
  return out;
}

DecodeResult decode(const GridSpec& grid,
                    const std::vector<MeasurementFrame>& frames,
                    const std::vector<Anchor>& anchors,
                    const HmmParams& params, bool keep_history) {
  if (frames.empty()) throw EmptyFrameError("decode() needs at least one frame");
  params.validate();
  Trellis trellis = init_column(grid, frames.front(), anchors, params, nullptr,
                                keep_history);
  for (std::size_t t = 1; t < frames.size(); ++t) {
    step(trellis, frames[t], anchors, params);
  }
  return {backtrack(trellis), trellis.counters};
}

double trajectory_score(const GridSpec& grid,
                        const std::vector<MeasurementFrame>& frames,
                        const std::vector<Anchor>& anchors,
                        const HmmParams& params,
                        const std::vector<int>& cells) {
  if (cells.size() != frames.size()) {
    throw LengthMismatchError("cell sequence and frame count differ");
  }
  double score = observation_logprob(grid, cells[0], frames[0], anchors, params);
  for (std::size_t t = 1; t < cells.size(); ++t) {
    score += transition_logprob(grid, cells[t - 1], cells[t], params) +
             observation_logprob(grid, cells[t], frames[t], anchors, params);
  }
  return score;
}

}  // namespace gridloc
