#pragma once

#include "gridloc/viterbi.hpp"

namespace gridloc {

/// One coarse-to-fine refinement pass. For pass k >= 2 the candidate set at
/// time t is exactly the 4 children of the pass-(k-1) decoded cell at t.
struct RefinementPass {
  int level = 0;
  std::vector<std::array<int, 4>> candidate_sets;  // empty for the coarse pass
  Trellis trellis;
  MapTrajectory trajectory;
};

struct AdaptiveResult {
  std::vector<RefinementPass> passes;
  MapTrajectory final;
  DecodeCounters counters;
};

/// Full conventional decode at the coarsest level, then per-level refinement
/// restricted to the children of the previous pass's trajectory. Counters
/// obey: transitions == N1^2 (T-1) + 16 (r-1)(T-1),
/// backpointer_cells == (N1 + 4 (r-1)) T.
AdaptiveResult decode_adaptive(const ResolutionLadder& ladder,
                               const std::vector<MeasurementFrame>& frames,
                               const std::vector<Anchor>& anchors,
                               const HmmParams& params);

/// Refines a level-(k-1) trajectory one level down (k >= 1, 0-based levels).
RefinementPass refine_pass(const ResolutionLadder& ladder, int level,
                           const MapTrajectory& prev,
                           const std::vector<MeasurementFrame>& frames,
                           const std::vector<Anchor>& anchors,
                           const HmmParams& params);

/// Re-runs decode_adaptive on the grown prefix after each appended frame and
/// returns the per-frame position estimates (online mode; the batch result
/// for the full horizon equals decode_adaptive on all frames).
std::vector<Vec2> decode_adaptive_online(
    const ResolutionLadder& ladder, const std::vector<MeasurementFrame>& frames,
    const std::vector<Anchor>& anchors, const HmmParams& params);

struct DivergenceReport {
  double mean_distance = 0.0;  // mean ||adaptive - conventional|| over t
  DecodeCounters conventional;
  DecodeCounters adaptive;
  double conventional_seconds = 0.0;
  double adaptive_seconds = 0.0;
};

/// Decodes the same frames with the conventional finest-grid Viterbi and the
/// adaptive ladder, and reports mean trajectory divergence plus counters and
/// wall time (decode only).
DivergenceReport compare_decodes(const GridSpec& grid_fine,
                                 const ResolutionLadder& ladder,
                                 const std::vector<MeasurementFrame>& frames,
                                 const std::vector<Anchor>& anchors,
                                 const HmmParams& params);

}  // namespace gridloc
