#pragma once

#include <string>
#include <vector>

#include "zeromodes/numerics.hpp"

namespace zeromodes {

// Row-major scalar field on a uniform grid over [x0, x1] x [y0, y1].
struct GridField {
  int nx, ny;
  double x0, x1, y0, y1;
  std::vector<double> values;  // values[j*nx + i] at (x_i, y_j)

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
};

struct Ray {
  double angle;
  std::string label;
};

// Marching-squares contours at a fixed ladder of levels, rendered as plain
// SVG 1.1. Rays are drawn from the origin as a separate annotated group.
std::string contour_svg(const GridField& grid, const std::vector<double>& levels,
                        const std::vector<Ray>& rays, int width_px = 760, int height_px = 760);

// A deterministic n-level ladder spanning the finite values of the grid.
std::vector<double> level_ladder(const GridField& grid, int n_levels);

}  // namespace zeromodes
