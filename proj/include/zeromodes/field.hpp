#pragma once

#include <string>
#include <vector>

#include "zeromodes/numerics.hpp"

namespace zeromodes {

// Piecewise-constant sector field: B = 2*b1 on the sector arg z in (0, alpha),
// B = 2*b2 = 2 elsewhere. b2 is fixed at 1 by the rescaling convention.
struct SectorFieldConfig {
  double alpha;  // sector opening, in (0, pi)
  double b1;     // field level on the sector, strictly negative

  SectorFieldConfig(double alpha_, double b1_);

  double b2() const { return 1.0; }
  double c0() const { return 1.0 - b1; }

  std::string to_json() const;
  static SectorFieldConfig from_json(const std::string& text);
};

// Radially homogeneous field B = b(psi) r^s. The angular profile is stored as
// complex Fourier coefficients with conjugate symmetry, so b(psi) is real and
// mode-wise arithmetic (the circle ODE) is exact.
struct HomogeneousFieldConfig {
  double s;  // homogeneity degree, in (-2, 0]

  // Coefficient of e^{i n psi}; only n >= 0 is stored, n < 0 is the conjugate.
  struct Mode {
    int n;
    cplx c;
  };
  std::vector<Mode> modes;

  HomogeneousFieldConfig(double s_, std::vector<Mode> modes_);

  cplx coefficient(int n) const;  // any n, conjugate symmetry applied
  double beta0() const;           // mean of the profile (n = 0 coefficient)
  double profile(double psi) const;
  int max_mode() const;

  std::string to_json() const;
  static HomogeneousFieldConfig from_json(const std::string& text);
};

double sector_field_value(const SectorFieldConfig& cfg, cplx z);
double homogeneous_field_value(const HomogeneousFieldConfig& cfg, cplx z);

// True when the principal argument of z lies in the open sector (0, alpha).
// Points on the boundary rays are assigned to Omega_2.
bool in_omega1(const SectorFieldConfig& cfg, cplx z);

}  // namespace zeromodes
