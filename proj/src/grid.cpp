#include "gridloc/grid.hpp"

#include <cmath>

namespace gridloc {

namespace {

// Rounds extent/resolution to the nearest integer cell count; rejects the
// split when the extent is not a multiple of the resolution within 1e-9
// relative tolerance.
int tiled_count(double extent, double resolution, const char* axis) {
  const double ratio = extent / resolution;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw NonTilingError(std::string("extent does not tile at resolution on ") +
                         axis + " axis");
  }
  return static_cast<int>(rounded);
}

}  // namespace

GridSpec build_grid(const Vec2& origin, double width, double height,
                    double resolution) {
  if (width <= 0.0 || height <= 0.0 || resolution <= 0.0) {
    throw ValidationError("width, height and resolution must be positive");
  }
  GridSpec g;
  g.origin = origin;
  g.width = width;
  g.height = height;
  g.resolution = resolution;
  g.nx = tiled_count(width, resolution, "x");
  g.ny = tiled_count(height, resolution, "y");
  return g;
}

ResolutionLadder build_ladder(const Vec2& origin, double width, double height,
                              double finest_resolution, int level_count) {
  if (level_count < 1) {
    throw InvalidLevelsError("ladder needs at least one level");
  }
  ResolutionLadder ladder;
  ladder.levels.reserve(level_count);
  for (int k = 0; k < level_count; ++k) {
    const double u = finest_resolution * std::exp2(level_count - 1 - k);
    ladder.levels.push_back(build_grid(origin, width, height, u));
  }
  return ladder;
}

std::array<int, 4> children(const ResolutionLadder& ladder, int level,
                            int parent) {
  if (level < 0 || level >= ladder.level_count() - 1) {
    throw LevelOutOfRangeError("no finer level below level " +
                               std::to_string(level));
  }
  const GridSpec& coarse = ladder.levels[level];
  const GridSpec& fine = ladder.levels[level + 1];
  const int px = coarse.cell_x(parent);
  const int py = coarse.cell_y(parent);
  // Quadrant order SW, SE, NW, NE.
  return {fine.index(2 * px, 2 * py), fine.index(2 * px + 1, 2 * py),
          fine.index(2 * px, 2 * py + 1), fine.index(2 * px + 1, 2 * py + 1)};
}

int parent(const ResolutionLadder& ladder, int level, int child) {
  if (level < 1 || level >= ladder.level_count()) {
    throw LevelOutOfRangeError("no coarser level above level " +
                               std::to_string(level));
  }
  const GridSpec& fine = ladder.levels[level];
  const GridSpec& coarse = ladder.levels[level - 1];
  return coarse.index(fine.cell_x(child) / 2, fine.cell_y(child) / 2);
}

int locate(const GridSpec& grid, const Vec2& p) {
  if (!grid.contains(p)) {
    throw OutOfBoundsError("position outside the workspace");
  }
  int ix = static_cast<int>(std::floor((p.x() - grid.origin.x()) / grid.resolution));
  int iy = static_cast<int>(std::floor((p.y() - grid.origin.y()) / grid.resolution));
  ix = std::min(ix, grid.nx - 1);
  iy = std::min(iy, grid.ny - 1);
  return grid.index(ix, iy);
}

}  // namespace gridloc
