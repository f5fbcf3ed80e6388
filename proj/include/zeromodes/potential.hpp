#pragma once

#include <array>
#include <string>
#include <vector>

#include "zeromodes/field.hpp"
#include "zeromodes/numerics.hpp"

namespace zeromodes {

enum class SectorSide { omega1, omega2 };

// Explicit solution of Laplace F = B for the sector field:
//   F(z) = phi(z) - (c0 sin(alpha) / 2pi) * Re((z e^{-i alpha/2})^2 log z),
// with phi = b1*x2^2 on Omega_1 and x2^2 on Omega_2, and log z taken in the
// branch with arg z in [alpha, alpha + 2pi), so the only cut is the ray L_alpha.
// F and its gradient glue continuously across L_alpha by construction.
class SectorPotential {
 public:
  explicit SectorPotential(SectorFieldConfig cfg) : cfg_(cfg) {}

  const SectorFieldConfig& config() const { return cfg_; }

  double eval(cplx z) const;
  std::array<double, 2> grad(cplx z) const;

  // One-sided limits on the ray L_alpha, for gluing checks. The formula is the
  // same code path as eval/grad with the sector membership and the branch
  // angle forced to the given side.
  double eval_on_cut(double r, SectorSide side) const;
  std::array<double, 2> grad_on_cut(double r, SectorSide side) const;

  // Coefficient C(psi) of |z|^2 log|z| along the direction psi (branch range).
  double log_growth_coefficient(double psi) const;

  // 5-point finite-difference Laplacian of eval. Throws stencil_error when any
  // stencil point lies within h of L_alpha (or of the positive real axis,
  // where phi's second derivative jumps), or when the stencil spans sectors.
  double laplacian_fd(cplx z, double h) const;

  // Branch angle in [alpha, alpha + 2pi).
  double branch_angle(cplx z) const;

 private:
  SectorFieldConfig cfg_;
};

// Fourier solution of phi'' + (s+2)^2 phi = b - beta0 on the circle.
struct CircleODESolution {
  double s;
  double beta0;
  double residual_norm;
  std::vector<HomogeneousFieldConfig::Mode> phi;  // n >= 1 modes of phi-tilde

  cplx coefficient(int n) const;
  double phi_tilde(double psi) const;
  int max_mode() const;

  std::string to_json() const;
  static CircleODESolution from_json(const std::string& text);
};

// Mode-wise solve phi_n = b_n / ((s+2)^2 - n^2). When s+2 is an integer m, the
// profile must be orthogonal to e^{+-i m psi} (else resonance_error) and the
// +-m modes of phi are pinned to zero.
CircleODESolution solve_circle_ode(const HomogeneousFieldConfig& cfg);

// F = (beta0 (s+2)^{-2} + phi_tilde(arg z)) |z|^{s+2}.
double eval_homogeneous_F(const CircleODESolution& sol, cplx z);

struct SignDefiniteness {
  bool sign_definite;
  double margin;       // |beta0|(s+2)^{-2} - sup|phi_tilde|  (certified sup)
  double sup_phitilde; // grid sup plus Bernstein-type correction
};

// True iff sup |phi_tilde| < |beta0| (s+2)^{-2}; then F has the sign of beta0
// everywhere and |F| >= margin * r^{s+2}.
SignDefiniteness sign_definite_check(const CircleODESolution& sol);

// Piecewise profile f for the two-arc potential F = f(psi) r^{s+2}: f = beta_plus on
// an arc I_plus, beta_minus on a disjoint arc I_minus, quintic-smoothstep joins between.
struct ExampleProfile {
  double s;
  double eps;
  double arc_length;
  double beta_plus, beta_minus;
  double center_plus, center_minus;  // arc midpoints
  std::vector<HomogeneousFieldConfig::Mode> fourier;  // 512-mode truncation

  double value(double psi) const;  // exact piecewise value (not the truncation)
  double second_derivative(double psi) const;
};

double example_arc_length(double s, double eps);

// strict = true enforces the arc-length < pi/2 requirement, which no (s, eps)
// with s <= 0 can meet; pass strict = false to build the profile anyway.
ExampleProfile build_example_profile(double s, double eps, double beta_plus, double beta_minus,
                                     bool strict = true);

}  // namespace zeromodes
