#include "zeromodes/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zeromodes {

std::vector<double> level_ladder(const GridField& grid, int n_levels) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : grid.values) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> levels;
  if (!(hi > lo)) return levels;
  for (int k = 1; k <= n_levels; ++k) levels.push_back(lo + (hi - lo) * k / (n_levels + 1));
  return levels;
}

namespace {

struct Seg {
  double x0, y0, x1, y1;
};

// Marching squares: emit one or two segments per cell crossing the level.
void cell_segments(const GridField& g, int i, int j, double level, std::vector<Seg>& out) {
  const double dx = (g.x1 - g.x0) / (g.nx - 1);
  const double dy = (g.y1 - g.y0) / (g.ny - 1);
  const double x = g.x0 + i * dx, y = g.y0 + j * dy;
  double v[4] = {g.at(i, j), g.at(i + 1, j), g.at(i + 1, j + 1), g.at(i, j + 1)};
  for (double& vv : v)
    if (!std::isfinite(vv)) return;
  int idx = 0;
  for (int k = 0; k < 4; ++k)
    if (v[k] > level) idx |= 1 << k;
  if (idx == 0 || idx == 15) return;

  auto interp = [&](double va, double vb) { return (level - va) / (vb - va); };
  // edge midpoints: 0 bottom, 1 right, 2 top, 3 left
  auto edge_pt = [&](int e, double& px, double& py) {
    switch (e) {
      case 0: px = x + dx * interp(v[0], v[1]); py = y; break;
      case 1: px = x + dx; py = y + dy * interp(v[1], v[2]); break;
      case 2: px = x + dx * interp(v[3], v[2]); py = y + dy; break;
      default: px = x; py = y + dy * interp(v[0], v[3]); break;
    }
  };
  static const int table[16][4] = {
      {-1, -1, -1, -1}, {0, 3, -1, -1}, {0, 1, -1, -1}, {1, 3, -1, -1},
      {1, 2, -1, -1},   {0, 3, 1, 2},   {0, 2, -1, -1}, {2, 3, -1, -1},
      {2, 3, -1, -1},   {0, 2, -1, -1}, {0, 1, 2, 3},   {1, 2, -1, -1},
      {1, 3, -1, -1},   {0, 1, -1, -1}, {0, 3, -1, -1}, {-1, -1, -1, -1}};
  const int* t = table[idx];
  for (int k = 0; k < 4 && t[k] >= 0; k += 2) {
    Seg s;
    edge_pt(t[k], s.x0, s.y0);
    edge_pt(t[k + 1], s.x1, s.y1);
    out.push_back(s);
  }
}

}  // namespace

std::string contour_svg(const GridField& grid, const std::vector<double>& levels,
                        const std::vector<Ray>& rays, int width_px, int height_px) {
  std::ostringstream os;
  os.precision(7);
  auto sx = [&](double x) { return (x - grid.x0) / (grid.x1 - grid.x0) * width_px; };
  auto sy = [&](double y) { return height_px - (y - grid.y0) / (grid.y1 - grid.y0) * height_px; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width_px
     << "\" height=\"" << height_px << "\" viewBox=\"0 0 " << width_px << " " << height_px << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  os << "<g id=\"contours\" fill=\"none\" stroke-width=\"1\">\n";
  for (std::size_t li = 0; li < levels.size(); ++li) {
    std::vector<Seg> segs;
    for (int j = 0; j + 1 < grid.ny; ++j)
      for (int i = 0; i + 1 < grid.nx; ++i) cell_segments(grid, i, j, levels[li], segs);
    const int hue = static_cast<int>(240.0 - 240.0 * li / std::max<std::size_t>(1, levels.size() - 1));
    os << "<g stroke=\"hsl(" << hue << ",70%,45%)\" data-level=\"" << levels[li] << "\">\n";
    for (const Seg& s : segs)
      os << "<line x1=\"" << sx(s.x0) << "\" y1=\"" << sy(s.y0) << "\" x2=\"" << sx(s.x1)
         << "\" y2=\"" << sy(s.y1) << "\"/>\n";
    os << "</g>\n";
  }
  os << "</g>\n";

  if (!rays.empty()) {
    const double rmax = 2.0 * std::max({std::abs(grid.x0), std::abs(grid.x1), std::abs(grid.y0), std::abs(grid.y1)});
    os << "<g id=\"rays\" stroke=\"black\" stroke-dasharray=\"6,4\" stroke-width=\"1.2\">\n";
    for (const Ray& r : rays)
      os << "<line data-angle=\"" << r.angle << "\" data-label=\"" << r.label
         << "\" x1=\"" << sx(0.0) << "\" y1=\"" << sy(0.0) << "\" x2=\"" << sx(rmax * std::cos(r.angle))
         << "\" y2=\"" << sy(rmax * std::sin(r.angle)) << "\"/>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace zeromodes
