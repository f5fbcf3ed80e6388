#include "zeromodes/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <unordered_map>

#include "zeromodes/potential.hpp"

namespace zeromodes {

using json = nlohmann::ordered_json;

cplx map_halfplane(const LogPowerMap& m, cplx omega) {
  if (omega.imag() < 0.0) throw std::domain_error("map_halfplane: omega must lie in the closed upper half-plane");
  if (std::abs(omega) <= m.R) throw std::domain_error("map_halfplane: |omega| must exceed the disk cutoff R");
  const cplx w = std::log(omega) - cplx(0.0, kPi / 2.0);
  return omega * std::exp(m.A * std::log(w));
}

cplx map_strip(const LogPowerMap& m, cplx z) {
  if (!(z.real() > m.varsigma && std::abs(z.imag()) < kPi / 2.0))
    throw std::domain_error("map_strip: z outside the half-strip Pi_varsigma");
  return std::exp(z) * std::exp(m.A * std::log(z));
}

double choose_varsigma(double A) {
  if (A == 0.0) throw std::invalid_argument("choose_varsigma: A must be nonzero");
  auto ok = [&](double vs) {
    auto cond = [&](cplx z) {
      // arg(z^A) computed as the wrapped A*Arg(z); forming z^A overflows
      // at |z|^A well before the angles get interesting.
      const double a1 = std::abs(std::remainder(A * std::arg(z), kTwoPi));
      const double a2 = std::abs(std::arg(cplx(1.0, 0.0) + A / z));
      return a1 < kPi / 40.0 && a2 < kPi / 40.0;
    };
    // Horizontal boundary lines, log-spaced out to x = 1e6; both quantities
    // decay in x, so the corner dominates, but the sweep keeps this honest.
    constexpr int kNx = 160;
    for (int i = 0; i <= kNx; ++i) {
      const double x = vs * std::pow(1e6 / vs, static_cast<double>(i) / kNx);
      if (!cond({x, kPi / 2.0}) || !cond({x, -kPi / 2.0})) return false;
    }
    constexpr int kNy = 33;
    for (int i = 0; i <= kNy; ++i) {
      const double y = -kPi / 2.0 + kPi * i / kNy;
      if (!cond({vs, y})) return false;
    }
    return true;
  };
  for (double vs = kTwoPi + 0.25; vs <= 1e4; vs += 0.25)
    if (ok(vs)) return vs;
  throw std::runtime_error("choose_varsigma: no varsigma <= 1e4 meets the pi/40 budget (|A| too large)");
}

ProbeRegion ProbeRegion::half_plane(double r_lo, double r_hi) {
  if (!(r_lo > 0.0 && r_hi > r_lo))
    throw std::invalid_argument("ProbeRegion::half_plane: need 0 < r_lo < r_hi (empty region)");
  ProbeRegion r;
  r.kind = Kind::half_plane_annulus;
  r.r_lo = r_lo;
  r.r_hi = r_hi;
  return r;
}

ProbeRegion ProbeRegion::strip(double x_lo, double x_hi, double y_lo, double y_hi) {
  ProbeRegion r;
  r.kind = Kind::strip;
  r.x_lo = x_lo;
  r.x_hi = x_hi;
  r.y_lo = y_lo;
  r.y_hi = y_hi;
  return r;
}

namespace {

struct GridPoint {
  cplx z;
  double spacing;
};

std::vector<GridPoint> make_grid(const ProbeRegion& region, int n) {
  std::vector<GridPoint> pts;
  pts.reserve(static_cast<std::size_t>(n) * n);
  if (region.kind == ProbeRegion::Kind::half_plane_annulus) {
    const bool jittered = region.radial_phase != 0.0 || region.angular_phase != 0.0;
    // Jittered grids use n steps instead of n-1 so the phase-shifted points
    // stay strictly inside the region; spacings are rigid either way.
    const double steps = jittered ? n : n - 1;
    const double ph_r = std::clamp(region.radial_phase, 0.0, 0.999);
    const double ph_t = std::clamp(region.angular_phase, 0.0, 0.999);
    const double g = std::pow(region.r_hi / region.r_lo, 1.0 / steps);
    const double dth = kPi / steps;
    for (int j = 0; j < n; ++j) {
      const double r = region.r_lo * std::pow(g, j + (jittered ? ph_r : 0.0));
      const double h = std::min(r * (g - 1.0), r * dth);
      for (int i = 0; i < n; ++i) {
        const double th = (i + (jittered ? ph_t : 0.0)) * dth;
        pts.push_back({r * std::exp(cplx(0.0, std::min(th, kPi))), h});
      }
    }
  } else {
    const double dx = (region.x_hi - region.x_lo) / (n - 1);
    const double dy = (region.y_hi - region.y_lo) / (n - 1);
    const double h = std::min(dx, dy);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        pts.push_back({{region.x_lo + j * dx, region.y_lo + i * dy}, h});
  }
  return pts;
}

std::vector<cplx> boundary_polyline(const ProbeRegion& region, int n) {
  std::vector<cplx> b;
  const int n4 = 4 * n;
  if (region.kind == ProbeRegion::Kind::half_plane_annulus) {
    for (int i = 0; i < n4; ++i)  // inner-to-outer along theta = 0
      b.push_back(region.r_lo * std::pow(region.r_hi / region.r_lo, static_cast<double>(i) / n4));
    for (int i = 0; i < n4; ++i)  // outer arc
      b.push_back(region.r_hi * std::exp(cplx(0.0, kPi * i / n4)));
    for (int i = 0; i < n4; ++i)  // outer-to-inner along theta = pi
      b.push_back(-(region.r_hi * std::pow(region.r_lo / region.r_hi, static_cast<double>(i) / n4)));
    for (int i = 0; i < n4; ++i)  // inner arc back
      b.push_back(region.r_lo * std::exp(cplx(0.0, kPi - kPi * i / n4)));
  } else {
    auto lerp = [](double a, double bb, double t) { return a + (bb - a) * t; };
    for (int i = 0; i < n4; ++i) b.push_back({lerp(region.x_lo, region.x_hi, static_cast<double>(i) / n4), region.y_lo});
    for (int i = 0; i < n4; ++i) b.push_back({region.x_hi, lerp(region.y_lo, region.y_hi, static_cast<double>(i) / n4)});
    for (int i = 0; i < n4; ++i) b.push_back({lerp(region.x_hi, region.x_lo, static_cast<double>(i) / n4), region.y_hi});
    for (int i = 0; i < n4; ++i) b.push_back({region.x_lo, lerp(region.y_hi, region.y_lo, static_cast<double>(i) / n4)});
  }
  return b;
}

double winding_number(const std::vector<cplx>& curve, cplx about) {
  double total = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const cplx a = curve[i] - about;
    const cplx b = curve[(i + 1) % curve.size()] - about;
    total += std::arg(b / a);
  }
  return total / kTwoPi;
}

}  // namespace

UnivalenceReport univalence_probe(const std::function<cplx(cplx)>& map, const ProbeRegion& region,
                                  int n_grid) {
  if (n_grid < 32) throw std::invalid_argument("univalence_probe: n_grid must be >= 32");
  UnivalenceReport rep;
  auto grid = make_grid(region, n_grid);
  rep.n_points = grid.size();

  std::vector<cplx> images(grid.size());
  double min_bound = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    images[i] = map(grid[i].z);
    const double step = std::max(1e-7 * std::abs(grid[i].z), 1e-9);
    // |zeta'| via a central difference; directions are equivalent for an
    // analytic map, and the probe must not assume a closed-form derivative.
    const cplx d = (map(grid[i].z + step) - map(grid[i].z - step)) / (2.0 * step);
    min_bound = std::min(min_bound, 0.5 * std::abs(d) * grid[i].spacing);
  }
  rep.min_separation = min_bound;

  // Bucket images on a min_bound-sized grid; collisions can only occur within
  // the 3x3 neighborhood of a bucket.
  std::unordered_map<long long, std::vector<std::size_t>> buckets;
  auto key = [&](cplx p) {
    auto qx = static_cast<long long>(std::floor(p.real() / min_bound));
    auto qy = static_cast<long long>(std::floor(p.imag() / min_bound));
    return (qx * 0x9E3779B97F4A7C15LL) ^ qy;
  };
  for (std::size_t i = 0; i < images.size(); ++i) buckets[key(images[i])].push_back(i);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const cplx p = images[i];
    auto qx = static_cast<long long>(std::floor(p.real() / min_bound));
    auto qy = static_cast<long long>(std::floor(p.imag() / min_bound));
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find(((qx + dx) * 0x9E3779B97F4A7C15LL) ^ (qy + dy));
        if (it == buckets.end()) continue;
        for (std::size_t j : it->second) {
          if (j <= i) continue;
          const double d = std::abs(images[i] - images[j]);
          if (d < min_bound) rep.collisions.push_back({grid[i].z, grid[j].z, d});
        }
      }
  }

  // Boundary winding about 20 interior image probes.
  auto boundary = boundary_polyline(region, n_grid);
  std::vector<cplx> bimg(boundary.size());
  for (std::size_t i = 0; i < boundary.size(); ++i) bimg[i] = map(boundary[i]);
  bool winding_ok = true;
  for (int k = 0; k < 20; ++k) {
    // interior rows/columns, spread through the grid
    const int jr = 1 + (k * (n_grid - 2)) / 20;
    const int ji = 1 + ((k * 7 + 3) * (n_grid - 2)) / 20 % (n_grid - 2);
    const cplx probe = images[static_cast<std::size_t>(jr) * n_grid + ji];
    const double w = winding_number(bimg, probe);
    rep.windings.push_back(w);
    winding_ok = winding_ok && std::abs(w - 1.0) < 0.2;
  }
  rep.pass = rep.collisions.empty() && winding_ok;
  if (!winding_ok) rep.note = "boundary winding differs from 1 at some probe";
  if (!rep.collisions.empty()) rep.note = "image collisions below the separation bound";
  return rep;
}

std::string UnivalenceReport::to_json() const {
  json j;
  j["pass"] = pass;
  json cols = json::array();
  for (const auto& c : collisions)
    cols.push_back({{"p", {c.p.real(), c.p.imag()}},
                    {"q", {c.q.real(), c.q.imag()}},
                    {"image_distance", c.image_distance}});
  j["collisions"] = cols;
  j["winding"] = windings;
  j["min_separation"] = min_separation;
  j["n_points"] = n_points;
  j["note"] = note;
  return j.dump();
}

BoundaryAngle boundary_angle(const LogPowerMap& m, double rho) {
  if (!(std::log(rho) > 1.0)) throw std::invalid_argument("boundary_angle: need log rho > 1");
  const double lr = std::log(rho);
  BoundaryAngle out;
  out.value = -kPi * m.A / (2.0 * lr);
  out.band = 1.5 * (kPi / 2.0) * m.A * m.A * std::log(lr) / (lr * lr);
  return out;
}

double probe_boundary_angle(const LogPowerMap& m, double rho) {
  // |zeta(omega)| is increasing in real omega; bisect on omega.
  auto mod = [&](double w) {
    const cplx v = cplx(w, 0.0) * std::exp(m.A * std::log(std::log(cplx(w, 0.0)) - cplx(0.0, kPi / 2.0)));
    return std::abs(v);
  };
  double lo = 3.0, hi = rho * 10.0;
  while (mod(hi) < rho) hi *= 4.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (mod(mid) < rho ? lo : hi) = mid;
  }
  const double omega = std::sqrt(lo * hi);
  const cplx img = cplx(omega, 0.0) * std::exp(m.A * std::log(std::log(cplx(omega, 0.0)) - cplx(0.0, kPi / 2.0)));
  return std::arg(img);
}

SectorLowerBound sector_S_lower_bound(const SectorFieldConfig& cfg, double A_margin, double r_max,
                                      int angles, int radii_per_decade) {
  if (!(std::abs(cfg.b1) < 0.5))
    throw std::invalid_argument("sector_S_lower_bound: requires |b1| < 1/2");
  if (!(A_margin > 0.0)) throw std::invalid_argument("sector_S_lower_bound: A_margin must be positive");
  if (!(r_max > 10.0)) throw std::invalid_argument("sector_S_lower_bound: r_max must exceed 10");

  const SectorPotential pot(cfg);
  const double lo = cfg.alpha / 2.0 + 7.0 * kPi / 4.0;
  const double hi = cfg.alpha / 2.0 + 9.0 * kPi / 4.0;

  SectorLowerBound out;
  out.C_est = std::numeric_limits<double>::infinity();
  out.worst_r = out.worst_psi = 0.0;

  const int n_r = std::max(2, static_cast<int>(std::ceil(radii_per_decade * std::log10(r_max / 10.0))));
  for (int ir = 0; ir <= n_r; ++ir) {
    const double r = 10.0 * std::pow(r_max / 10.0, static_cast<double>(ir) / n_r);
    const double collar = A_margin / std::log(r);
    for (int ia = 0; ia <= angles; ++ia) {
      const double psi = (lo - collar) + (hi - lo + 2.0 * collar) * ia / angles;
      const double F = pot.eval(r * std::exp(cplx(0.0, psi)));
      const double c = -F / (r * r);
      if (c < out.C_est) {
        out.C_est = c;
        out.worst_r = r;
        out.worst_psi = psi;
      }
    }
  }

  const double theta = kPi - cfg.alpha;
  const double edge = 9.0 * kPi / 4.0 + cfg.alpha / 2.0;
  out.theta_condition = cfg.c0() * std::sin(theta) / kTwoPi * edge <=
                        0.5 * std::sin(edge) * std::sin(edge) * std::abs(cfg.b1);
  return out;
}

double tilde_F(const SectorFieldConfig& cfg, cplx z) {
  const SectorPotential pot(cfg);
  const double re_H = std::norm(z) / 6.0 * std::sin(2.0 * std::arg(z) - cfg.alpha);
  return pot.eval(z) - re_H;
}

}  // namespace zeromodes
