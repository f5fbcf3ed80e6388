#include "zeromodes/cells.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <unordered_map>

namespace zeromodes {

using json = nlohmann::ordered_json;

double polygon_area(std::span<const cplx> poly) {
  double a = 0.0;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx& p = poly[i];
    const cplx& q = poly[(i + 1) % n];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

cplx polygon_centroid(std::span<const cplx> poly) {
  double a = 0.0, cx = 0.0, cy = 0.0;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx& p = poly[i];
    const cplx& q = poly[(i + 1) % n];
    double cr = p.real() * q.imag() - q.real() * p.imag();
    a += cr;
    cx += (p.real() + q.real()) * cr;
    cy += (p.imag() + q.imag()) * cr;
  }
  a *= 0.5;
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

cplx polygon_second_moment(std::span<const cplx> poly, cplx about) {
  // integral over the polygon of (w - about)^2, by fan triangulation;
  // exact for the quadratic integrand.
  cplx m2 = 0.0;
  cplx p0 = poly[0];
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
    cplx p1 = poly[i], p2 = poly[i + 1];
    double area = 0.5 * ((p1 - p0).real() * (p2 - p0).imag() - (p1 - p0).imag() * (p2 - p0).real());
    cplx w0 = p0 - about, w1 = p1 - about, w2 = p2 - about;
    m2 += area / 6.0 * (w0 * w0 + w1 * w1 + w2 * w2 + w0 * w1 + w1 * w2 + w2 * w0);
  }
  return m2;
}

namespace {

// Clip a convex polygon against the half-plane a*x + b*y <= c.
std::vector<cplx> clip_halfplane(const std::vector<cplx>& poly, double a, double b, double c) {
  std::vector<cplx> out;
  out.reserve(poly.size() + 2);
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx& p = poly[i];
    const cplx& q = poly[(i + 1) % n];
    double fp = a * p.real() + b * p.imag() - c;
    double fq = a * q.real() + b * q.imag() - c;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0) != (fq < 0.0) && fp != fq) {
      double t = fp / (fp - fq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

// Vertical chord length of a convex polygon at abscissa x.
double chord_width(const std::vector<cplx>& poly, double x) {
  double ymin = 0.0, ymax = 0.0;
  bool any = false;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx& p = poly[i];
    const cplx& q = poly[(i + 1) % n];
    double x0 = p.real(), x1 = q.real();
    double y = 0.0;
    bool hit = false;
    if ((x0 - x) * (x1 - x) < 0.0) {
      double t = (x - x0) / (x1 - x0);
      y = p.imag() + t * (q.imag() - p.imag());
      hit = true;
    } else if (x0 == x) {
      y = p.imag();
      hit = true;
    }
    if (hit) {
      if (!any) {
        ymin = ymax = y;
        any = true;
      } else {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  return any ? ymax - ymin : 0.0;
}

void dedupe(std::vector<cplx>& poly) {
  std::vector<cplx> out;
  for (const cplx& p : poly) {
    if (out.empty() || std::abs(p - out.back()) > 1e-13) out.push_back(p);
  }
  while (out.size() > 1 && std::abs(out.front() - out.back()) <= 1e-13) out.pop_back();
  poly = std::move(out);
}

}  // namespace

CellSet generate_cells(double eps, double sigma, double r_cut) {
  if (!(eps > 0.0 && eps < kPi / 8.0)) throw std::invalid_argument("generate_cells: eps must lie in (0, pi/8)");
  if (!(sigma > 0.0)) throw std::invalid_argument("generate_cells: sigma must be positive");
  if (!(r_cut > 2.0)) throw std::invalid_argument("generate_cells: r_cut must exceed 2");
  if (sigma > r_cut / 4.0) throw std::invalid_argument("generate_cells: sigma too large for r_cut (degenerate partition)");

  const double tn = std::tan(eps);
  const double target = sigma * sigma;
  CellSet cs{eps, sigma, r_cut, {}};

  const int kmax = static_cast<int>(std::floor(r_cut * tn / sigma)) + 2;
  for (int k = -kmax - 1; k <= kmax; ++k) {
    const double y0 = (k - 0.5) * sigma;
    const double y1 = (k + 0.5) * sigma;
    std::vector<cplx> strip = {{1.0, y0}, {r_cut, y0}, {r_cut, y1}, {1.0, y1}};
    strip = clip_halfplane(strip, -tn, 1.0, 0.0);  // y <= x tan(eps)
    if (strip.size() < 3) continue;
    strip = clip_halfplane(strip, -tn, -1.0, 0.0);  // -y <= x tan(eps)
    dedupe(strip);
    if (strip.size() < 3 || polygon_area(strip) <= 0.0) continue;

    // Breakpoints of the (piecewise linear) chord-width function.
    std::vector<double> xs;
    for (const cplx& p : strip) xs.push_back(p.real());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             xs.end());

    // Sweep left to right; cut where the accumulated area reaches sigma^2.
    std::vector<double> cuts = {xs.front()};
    double xcur = xs.front();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double xi = xs[i], xj = xs[i + 1];
      const double dx = xj - xi;
      const double wi = chord_width(strip, xi + 1e-12 * dx);
      const double wj = chord_width(strip, xj - 1e-12 * dx);
      for (;;) {
        const double wcur = wi + (wj - wi) * (xcur - xi) / dx;
        const double seg = 0.5 * (wcur + wj) * (xj - xcur);
        if (acc + seg < target - 1e-13 * target) {
          acc += seg;
          break;
        }
        // Solve acc + wcur*t + slope/2 t^2 = target for t = X - xcur.
        const double slope = (wj - wi) / dx;
        const double need = target - acc;
        double t;
        if (std::abs(slope) < 1e-14) {
          t = need / wcur;
        } else {
          const double disc = wcur * wcur + 2.0 * slope * need;
          t = (-wcur + std::sqrt(std::max(disc, 0.0))) / slope;
        }
        xcur += t;
        cuts.push_back(xcur);
        acc = 0.0;
      }
      xcur = std::max(xcur, xj);
    }

    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      std::vector<cplx> cp = clip_halfplane(strip, 1.0, 0.0, cuts[j + 1]);
      cp = clip_halfplane(cp, -1.0, 0.0, -cuts[j]);
      dedupe(cp);
      if (cp.size() < 3) continue;
      Cell cell;
      cell.area = polygon_area(cp);
      if (cell.area <= 0.0) continue;
      cell.marked_point = polygon_centroid(cp);
      cell.poly = std::move(cp);
      cell.strip_index = k;
      cs.cells.push_back(std::move(cell));
    }
  }
  return cs;
}

CellValidation validate_cells(const CellSet& cs) {
  CellValidation v{};
  const double target = cs.sigma * cs.sigma;
  double total = 0.0;
  for (const auto& c : cs.cells) {
    double area = polygon_area(c.poly);
    total += area;
    v.max_area_dev = std::max(v.max_area_dev, std::abs(area - target));
    // First moment about the marked point: centroid*area - a_Q*area.
    cplx m1 = (polygon_centroid(c.poly) - c.marked_point) * area;
    v.max_first_moment = std::max(v.max_first_moment, std::abs(m1));
    double diam = 0.0;
    for (std::size_t i = 0; i < c.poly.size(); ++i)
      for (std::size_t j = i + 1; j < c.poly.size(); ++j)
        diam = std::max(diam, std::abs(c.poly[i] - c.poly[j]));
    v.max_diameter = std::max(v.max_diameter, diam);
  }

  // Nearest-neighbor distance via a sigma-sized bucket grid.
  v.min_pair_distance = std::numeric_limits<double>::infinity();
  auto key = [&](const cplx& p) {
    auto qx = static_cast<long long>(std::floor(p.real() / cs.sigma));
    auto qy = static_cast<long long>(std::floor(p.imag() / cs.sigma));
    return (qx << 21) ^ (qy & ((1LL << 21) - 1));
  };
  std::unordered_map<long long, std::vector<std::size_t>> grid;
  for (std::size_t i = 0; i < cs.cells.size(); ++i) grid[key(cs.cells[i].marked_point)].push_back(i);
  for (std::size_t i = 0; i < cs.cells.size(); ++i) {
    const cplx a = cs.cells[i].marked_point;
    auto qx = static_cast<long long>(std::floor(a.real() / cs.sigma));
    auto qy = static_cast<long long>(std::floor(a.imag() / cs.sigma));
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid.find(((qx + dx) << 21) ^ ((qy + dy) & ((1LL << 21) - 1)));
        if (it == grid.end()) continue;
        for (std::size_t j : it->second)
          if (j != i) v.min_pair_distance = std::min(v.min_pair_distance, std::abs(a - cs.cells[j].marked_point));
      }
  }

  // Union check. The construction discards the last incomplete piece per
  // strip, so the union must equal, strip by strip, the clipped strip polygon
  // truncated at the last cut. Comparing the cell-area sum per strip against
  // that clipped area catches both overlaps and gaps.
  const double tn = std::tan(cs.eps);
  std::unordered_map<int, std::pair<double, double>> strip_sum_and_maxx;
  for (const auto& c : cs.cells) {
    auto& [sum, mx] = strip_sum_and_maxx[c.strip_index];
    sum += polygon_area(c.poly);
    for (const cplx& p : c.poly) mx = std::max(mx, p.real());
  }
  double worst = 0.0;
  for (const auto& [k, sm] : strip_sum_and_maxx) {
    std::vector<cplx> strip = {{1.0, (k - 0.5) * cs.sigma},
                               {sm.second, (k - 0.5) * cs.sigma},
                               {sm.second, (k + 0.5) * cs.sigma},
                               {1.0, (k + 0.5) * cs.sigma}};
    auto clip = [&](double a, double b, double c2) {
      std::vector<cplx> out;
      std::size_t n = strip.size();
      for (std::size_t i = 0; i < n; ++i) {
        cplx p = strip[i], q = strip[(i + 1) % n];
        double fp = a * p.real() + b * p.imag() - c2;
        double fq = a * q.real() + b * q.imag() - c2;
        if (fp <= 0.0) out.push_back(p);
        if ((fp < 0.0) != (fq < 0.0) && fp != fq) out.push_back(p + (fp / (fp - fq)) * (q - p));
      }
      strip = out;
    };
    clip(-tn, 1.0, 0.0);
    if (strip.size() >= 3) clip(-tn, -1.0, 0.0);
    double ref = strip.size() >= 3 ? polygon_area(strip) : 0.0;
    if (ref > 0.0) worst = std::max(worst, std::abs(sm.first - ref) / ref);
  }
  v.total_area_mismatch = worst;
  (void)total;

  v.pass = v.max_area_dev <= 1e-10 * target && v.max_first_moment <= 1e-10 * target * cs.sigma &&
           v.min_pair_distance >= cs.sigma / 2.0 && v.total_area_mismatch <= 1e-8;
  return v;
}

std::string CellSet::to_json() const {
  json j;
  j["eps"] = eps;
  j["sigma"] = sigma;
  j["r_cut"] = r_cut;
  json arr = json::array();
  for (const auto& c : cells) {
    json poly = json::array();
    for (const cplx& p : c.poly) poly.push_back({p.real(), p.imag()});
    arr.push_back({{"poly", poly}, {"aq", {c.marked_point.real(), c.marked_point.imag()}}});
  }
  j["cells"] = arr;
  return j.dump();
}

CellSet CellSet::from_json(const std::string& text) {
  json j = json::parse(text);
  CellSet cs{j.at("eps").get<double>(), j.at("sigma").get<double>(), j.at("r_cut").get<double>(), {}};
  for (const auto& cj : j.at("cells")) {
    Cell c;
    for (const auto& pj : cj.at("poly")) c.poly.emplace_back(pj.at(0).get<double>(), pj.at(1).get<double>());
    c.marked_point = {cj.at("aq").at(0).get<double>(), cj.at("aq").at(1).get<double>()};
    c.area = polygon_area(c.poly);
    c.strip_index = static_cast<int>(std::floor(c.marked_point.imag() / cs.sigma + 0.5));
    cs.cells.push_back(std::move(c));
  }
  return cs;
}

}  // namespace zeromodes
