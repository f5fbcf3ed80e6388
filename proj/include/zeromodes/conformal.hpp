#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zeromodes/field.hpp"
#include "zeromodes/numerics.hpp"

namespace zeromodes {

// The map zeta(omega) = omega (log omega - i pi/2)^A on the cut upper
// half-plane, and its half-strip form zeta(z) = e^z z^A under omega = i e^z.
struct LogPowerMap {
  double A;
  double varsigma;  // strip cutoff; the matching disk cutoff is R = exp(varsigma)
  double R;

  LogPowerMap(double A_, double varsigma_) : A(A_), varsigma(varsigma_), R(std::exp(varsigma_)) {}
  LogPowerMap(double A_, double varsigma_, double R_) : A(A_), varsigma(varsigma_), R(R_) {}
};

cplx map_halfplane(const LogPowerMap& m, cplx omega);
cplx map_strip(const LogPowerMap& m, cplx z);

// Smallest varsigma > 2pi on a 0.25 grid such that |arg z^A| and |arg(1+A/z)|
// stay below pi/40 on the sampled boundary of the half-strip (x up to 1e6).
// Throws std::runtime_error if no varsigma <= 1e4 works.
double choose_varsigma(double A);

struct ProbeRegion {
  enum class Kind { half_plane_annulus, strip };
  Kind kind;
  // half_plane_annulus: log-radial grid r in [r_lo, r_hi], theta in [0, pi].
  double r_lo = 0.0, r_hi = 0.0;
  // strip: rectangular grid on [x_lo, x_hi] x [y_lo, y_hi].
  double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
  // Rigid grid offsets in units of half a grid step (annulus form only);
  // spacings are unchanged, so the collision bound stays valid.
  double radial_phase = 0.0;
  double angular_phase = 0.0;

  static ProbeRegion half_plane(double r_lo, double r_hi);
  static ProbeRegion strip(double x_lo, double x_hi, double y_lo, double y_hi);
};

struct Collision {
  cplx p, q;
  double image_distance;
};

struct UnivalenceReport {
  bool pass;
  std::vector<Collision> collisions;
  std::vector<double> windings;  // boundary winding about each interior probe point
  double min_separation;         // separation bound used for collision detection
  std::size_t n_points;
  std::string note;

  std::string to_json() const;
};

// Grid-collision plus boundary-winding probe of injectivity. Images are
// bucketed with cell size = (1/2) min over the grid of |zeta'| * (local grid
// spacing); any two grid points whose images fall closer than that bound are
// reported. The image of the region boundary must wind exactly once around
// each of 20 interior image probes.
UnivalenceReport univalence_probe(const std::function<cplx(cplx)>& map, const ProbeRegion& region,
                                  int n_grid);

struct BoundaryAngle {
  double value;  // leading term -pi A / (2 log rho)
  double band;   // scale of the O(log log rho / log^2 rho) remainder
};

BoundaryAngle boundary_angle(const LogPowerMap& m, double rho);

// Argument of the image of the positive real boundary ray at image modulus rho
// (solves |zeta(omega)| = rho for real omega by bisection). The oracle the
// boundary_angle leading term is checked against.
double probe_boundary_angle(const LogPowerMap& m, double rho);

struct SectorLowerBound {
  double C_est;          // min over the grid of -F(z)/|z|^2
  bool theta_condition;  // closed-form smallness condition on theta = pi - alpha
  double worst_r;
  double worst_psi;
};

// Minimum of -F/|z|^2 over the sector S = {psi in (alpha/2 + 7pi/4, alpha/2 + 9pi/4)}
// extended by the log-shrinking collars |psi - edge| <= A_margin / log r,
// on a log-radial grid r in [10, r_max]. C_est > 0 certifies -F >= C_est |z|^2
// on the sampled region; C_est <= 0 reports that the bound fails.
SectorLowerBound sector_S_lower_bound(const SectorFieldConfig& cfg, double A_margin, double r_max,
                                      int angles = 512, int radii_per_decade = 128);

// F(z) - Re H(z) with H(z) = -(i/6) e^{-i alpha} z^2; the auxiliary potential
// whose quadratic term is positive on the T-side sectors.
double tilde_F(const SectorFieldConfig& cfg, cplx z);

}  // namespace zeromodes
