#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gridloc/models.hpp"

namespace gridloc {

/// Instrumentation collected while decoding. `backpointer_cells` counts the
/// memorization-table entries, one per active cell per column (the first
/// column holds sentinel self-pointers).
struct DecodeCounters {
  std::uint64_t transitions = 0;
  std::uint64_t observations = 0;
  std::uint64_t backpointer_cells = 0;

  DecodeCounters& operator+=(const DecodeCounters& other) {
    transitions += other.transitions;
    observations += other.observations;
    backpointer_cells += other.backpointer_cells;
    return *this;
  }
};

/// Log-belief columns (rho) and backpointer table (Psi) over a grid.
/// A column's active set restricts the live cells; an empty active vector
/// means the full grid. Completed columns are immutable; step() is the
/// single writer.
struct Trellis {
  GridSpec grid;
  bool keep_history = true;  // false: retain only the latest rho column
  std::vector<std::vector<double>> scores;
  std::vector<std::vector<int>> backptrs;
  std::vector<std::vector<int>> active;  // per column; empty = full grid
  DecodeCounters counters;

  int column_count() const { return static_cast<int>(backptrs.size()); }
  int active_count(int column) const {
    return active[column].empty() ? grid.cell_count()
                                  : static_cast<int>(active[column].size());
  }
  int active_cell(int column, int slot) const {
    return active[column].empty() ? slot : active[column][slot];
  }
  /// Latest rho column (the only one retained when keep_history is off).
  const std::vector<double>& last_scores() const { return scores.back(); }

 private:
  friend void step(Trellis&, const MeasurementFrame&,
                   const std::vector<Anchor>&, const HmmParams&,
                   const std::vector<int>*);
  std::vector<double> kernel_cache_;  // indexed by (|diy| * nx + |dix|)
  std::optional<HmmParams> kernel_params_;
};

struct MapTrajectory {
  int level = -1;  // ladder level, or -1 for a standalone grid
  std::vector<int> cells;
  std::vector<Vec2> positions;

  int length() const { return static_cast<int>(cells.size()); }
};

struct DecodeResult {
  MapTrajectory trajectory;
  DecodeCounters counters;
};

/// First trellis column: rho_1(i) = observation log-likelihood of frame 1 at
/// cell i, over the given active set (full grid when null).
Trellis init_column(const GridSpec& grid, const MeasurementFrame& frame,
                    const std::vector<Anchor>& anchors,
                    const HmmParams& params,
                    const std::vector<int>* active_cells = nullptr,
                    bool keep_history = true);

/// Appends one column: for each active destination cell the best predecessor
/// by rho + transition (ties to the smallest cell index), plus the frame's
/// observation term.
void step(Trellis& trellis, const MeasurementFrame& frame,
          const std::vector<Anchor>& anchors, const HmmParams& params,
          const std::vector<int>* active_cells = nullptr);

/// Follows backpointers from the best final cell (ties to the smallest
/// index) to recover the MAP cell sequence.
MapTrajectory backtrack(const Trellis& trellis);

/// init_column + step x (T-1) + backtrack over the full grid.
DecodeResult decode(const GridSpec& grid,
                    const std::vector<MeasurementFrame>& frames,
                    const std::vector<Anchor>& anchors,
                    const HmmParams& params, bool keep_history = true);

/// Joint log score of a cell sequence: sum of observation terms plus
/// transition terms between consecutive cells.
double trajectory_score(const GridSpec& grid,
                        const std::vector<MeasurementFrame>& frames,
                        const std::vector<Anchor>& anchors,
                        const HmmParams& params, const std::vector<int>& cells);

}  // namespace gridloc
