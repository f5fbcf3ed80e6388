#include <doctest.h>

#include <cmath>
#include <set>

#include "zeromodes/cells.hpp"

using namespace zeromodes;

TEST_CASE("interior cells are sigma squares with centered marked points") {
  CellSet cs = generate_cells(0.1, 1.0, 100.0);
  const double tn = std::tan(0.1);
  int n_squares = 0;
  for (const auto& c : cs.cells) {
    // Interior: every vertex strictly inside the sector and past the slant run.
    bool interior = true;
    for (const cplx& p : c.poly)
      interior = interior && std::abs(p.imag()) < p.real() * tn - 1e-9;
    if (!interior) continue;
    ++n_squares;
    REQUIRE(c.poly.size() == 4);
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const cplx& p : c.poly) {
      xmin = std::min(xmin, p.real());
      xmax = std::max(xmax, p.real());
      ymin = std::min(ymin, p.imag());
      ymax = std::max(ymax, p.imag());
    }
    CHECK(xmax - xmin == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ymax - ymin == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.marked_point.real() == doctest::Approx(0.5 * (xmin + xmax)).epsilon(1e-12));
    CHECK(c.marked_point.imag() == doctest::Approx(0.5 * (ymin + ymax)).epsilon(1e-12));
  }
  CHECK(n_squares > 100);
}

TEST_CASE("cell count approximates the clipped sector area") {
  CellSet cs = generate_cells(0.1, 1.0, 100.0);
  // Exact area of {x in [1, 100], |y| <= x tan eps}: tan(eps) * (100^2 - 1).
  const double area = std::tan(0.1) * (100.0 * 100.0 - 1.0);
  CHECK(std::abs(static_cast<double>(cs.cells.size()) - area) / area < 0.10);
}

TEST_CASE("validation passes and certifies the partition invariants") {
  for (auto [eps, sigma] : {std::pair{0.1, 1.0}, {0.2, 5.27}}) {
    CellSet cs = generate_cells(eps, sigma, 200.0);
    CellValidation v = validate_cells(cs);
    CAPTURE(eps);
    CAPTURE(sigma);
    CHECK(v.pass);
    CHECK(v.max_area_dev <= 1e-10 * sigma * sigma);
    CHECK(v.max_first_moment <= 1e-10 * sigma * sigma * sigma);
    CHECK(v.min_pair_distance >= sigma / 2.0);
    CHECK(v.total_area_mismatch <= 1e-8);
    CHECK(v.max_diameter <= 2.0 * sigma / std::sqrt(eps));
  }
}

TEST_CASE("validation catches a perturbed marked point") {
  CellSet cs = generate_cells(0.1, 1.0, 50.0);
  cs.cells[10].marked_point += cplx(1.0, 0.0);  // one sigma off
  CellValidation v = validate_cells(cs);
  CHECK_FALSE(v.pass);
  CHECK(v.max_first_moment > 1e-10);
}

TEST_CASE("validation catches a duplicated cell") {
  CellSet cs = generate_cells(0.1, 1.0, 50.0);
  cs.cells.push_back(cs.cells[20]);
  CellValidation v = validate_cells(cs);
  CHECK_FALSE(v.pass);
  CHECK(v.min_pair_distance == 0.0);
}

TEST_CASE("generation is deterministic") {
  CellSet a = generate_cells(0.15, 0.7, 80.0);
  CellSet b = generate_cells(0.15, 0.7, 80.0);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].marked_point == b.cells[i].marked_point);  // bit-identical
    REQUIRE(a.cells[i].poly.size() == b.cells[i].poly.size());
    for (std::size_t k = 0; k < a.cells[i].poly.size(); ++k)
      CHECK(a.cells[i].poly[k] == b.cells[i].poly[k]);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(generate_cells(kPi / 8.0, 1.0, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_cells(0.5, 1.0, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_cells(0.1, 30.0, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_cells(0.1, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("cells lie in the truncated sector and strips are coherent") {
  CellSet cs = generate_cells(0.12, 0.9, 60.0);
  const double tn = std::tan(0.12);
  for (const auto& c : cs.cells) {
    for (const cplx& p : c.poly) {
      CHECK(p.real() >= 1.0 - 1e-9);
      CHECK(p.real() <= 60.0 + 1e-9);
      CHECK(std::abs(p.imag()) <= p.real() * tn + 1e-9);
      // vertical extent within the cell's strip
      CHECK(p.imag() >= (c.strip_index - 0.5) * 0.9 - 1e-9);
      CHECK(p.imag() <= (c.strip_index + 0.5) * 0.9 + 1e-9);
    }
  }
}

TEST_CASE("JSON round trip preserves geometry") {
  CellSet cs = generate_cells(0.1, 1.0, 30.0);
  CellSet cs2 = CellSet::from_json(cs.to_json());
  REQUIRE(cs2.cells.size() == cs.cells.size());
  CHECK(cs2.eps == cs.eps);
  CHECK(cs2.sigma == cs.sigma);
  CHECK(cs2.r_cut == cs.r_cut);
  for (std::size_t i = 0; i < cs.cells.size(); ++i) {
    CHECK(cs2.cells[i].marked_point == cs.cells[i].marked_point);
    CHECK(cs2.cells[i].strip_index == cs.cells[i].strip_index);
  }
  CHECK(validate_cells(cs2).pass);
}

TEST_CASE("polygon second moment vanishes for squares") {
  std::vector<cplx> sq = {{2.0, 3.0}, {3.0, 3.0}, {3.0, 4.0}, {2.0, 4.0}};
  const cplx c = polygon_centroid(sq);
  CHECK(std::abs(polygon_second_moment(sq, c)) < 1e-14);
  CHECK(polygon_area(sq) == doctest::Approx(1.0).epsilon(1e-14));
}
