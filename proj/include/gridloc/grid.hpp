#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "gridloc/errors.hpp"

namespace gridloc {

using Vec2 = Eigen::Vector2d;

/// Uniform discretization of a rectangular workspace into square cells.
/// Cells are indexed row-major: i = iy * nx + ix.
struct GridSpec {
  Vec2 origin{0.0, 0.0};
  double width = 0.0;
  double height = 0.0;
  double resolution = 0.0;
  int nx = 0;
  int ny = 0;

  int cell_count() const { return nx * ny; }

  int index(int ix, int iy) const { return iy * nx + ix; }
  int cell_x(int i) const { return i % nx; }
  int cell_y(int i) const { return i / nx; }

  Vec2 cell_center(int i) const {
    return {origin.x() + (cell_x(i) + 0.5) * resolution,
            origin.y() + (cell_y(i) + 0.5) * resolution};
  }

  bool contains(const Vec2& p) const {
    return p.x() >= origin.x() && p.x() < origin.x() + width &&
           p.y() >= origin.y() && p.y() < origin.y() + height;
  }

  bool operator==(const GridSpec& other) const = default;
};

/// Quadtree resolution ladder: levels[0] is the coarsest, each finer level
/// halves the cell side and doubles the dims on both axes.
struct ResolutionLadder {
  std::vector<GridSpec> levels;

  int level_count() const { return static_cast<int>(levels.size()); }
  const GridSpec& coarsest() const { return levels.front(); }
  const GridSpec& finest() const { return levels.back(); }
};

/// Builds a grid over [origin, origin + extent). The extent must be an
/// integer multiple of the resolution on both axes (1e-9 relative tolerance);
/// otherwise NonTilingError.
GridSpec build_grid(const Vec2& origin, double width, double height,
                    double resolution);

/// Builds an r-level ladder whose finest resolution is `finest_resolution`
/// and whose level-k resolution is finest * 2^(r-1-k). The workspace must
/// tile at the coarsest resolution.
ResolutionLadder build_ladder(const Vec2& origin, double width, double height,
                              double finest_resolution, int level_count);

/// The four level-(k+1) cells partitioning the given level-k cell, in
/// quadrant order (SW, SE, NW, NE).
std::array<int, 4> children(const ResolutionLadder& ladder, int level,
                            int parent);

/// The level-(k-1) cell whose area contains the given level-k cell.
int parent(const ResolutionLadder& ladder, int level, int child);

/// Index of the cell whose half-open area [x0, x0+u) x [y0, y0+u) contains p.
/// Throws OutOfBoundsError if p lies outside the workspace.
int locate(const GridSpec& grid, const Vec2& p);

}  // namespace gridloc
