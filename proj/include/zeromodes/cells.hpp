#pragma once

#include <string>
#include <vector>

#include "zeromodes/numerics.hpp"

namespace zeromodes {

// One cell of the sector partition: a convex polygon of area sigma^2 whose
// marked point is its exact centroid (first moment about it vanishes).
struct Cell {
  std::vector<cplx> poly;  // counterclockwise, closed implicitly
  cplx marked_point;
  double area;
  int strip_index;
};

struct CellSet {
  double eps;    // sector half-angle
  double sigma;  // cell side / area^(1/2)
  double r_cut;  // right truncation abscissa
  std::vector<Cell> cells;

  std::string to_json() const;
  static CellSet from_json(const std::string& text);
};

// Partition of the sector {|arg z| < eps, Re z in [1, r_cut]} into cells of
// exact area sigma^2. Strips are horizontal bands of height sigma centered so
// that y = 0 is a strip midline; within each strip, cells are cut by vertical
// lines swept left to right, the cut abscissae solved in closed form. The
// rightmost incomplete piece of each strip is discarded.
//
// The strip centering (midline at y = 0 rather than a strip edge there) keeps
// the sigma/2 marked-point separation: with an edge on the axis, the two
// mirrored tip wedges have centroids only ~0.32*sigma apart.
CellSet generate_cells(double eps, double sigma, double r_cut);

struct CellValidation {
  double max_area_dev;         // max |area - sigma^2|
  double max_first_moment;     // max |integral of (w - a_Q) over Q|
  double min_pair_distance;    // min over distinct cells of |a_Q - a_Q'|
  double total_area_mismatch;  // relative, against the exact clipped-sector area minus discarded pieces
  double max_diameter;
  bool pass;
};

CellValidation validate_cells(const CellSet& cs);

// Polygon helpers shared with tests and the conformal probe.
double polygon_area(std::span<const cplx> poly);
cplx polygon_centroid(std::span<const cplx> poly);
cplx polygon_second_moment(std::span<const cplx> poly, cplx about);

}  // namespace zeromodes
