#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace zeromodes {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Thrown when an evaluation point sits on a genuine singularity of the
// formula being evaluated (origin of a potential, lattice zero, branch pinch).
class singularity_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown by solve_circle_ode when s+2 is an integer and the profile has a
// component along e^{i(s+2)psi}; the solution would need an r^{s+2} log r term.
class resonance_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown by finite-difference stencils that would straddle a discontinuity.
class stencil_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Principal argument remapped to [0, 2*pi).
double arg_0_2pi(cplx z);

// Gauss-Legendre nodes/weights on [-1, 1]; computed once per order and cached.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

// Deterministic pairwise summation with Kahan-compensated leaves. The result
// depends only on the order of `terms`, never on blocking or thread count.
double pairwise_sum(std::span<const double> terms);

// log(exp(a) + exp(b)) without overflow; -inf absorbing.
double log_add_exp(double a, double b);

// Least-squares fit of y against columns {1, x1, x2}; returns coefficients
// (c0, c1, c2). Normal equations with a hand-rolled 3x3 solve.
struct Fit3 {
  double c0, c1, c2;
};
Fit3 least_squares_3(std::span<const double> x1, std::span<const double> x2,
                     std::span<const double> y);

// Simple linear fit y = a + b*x; returns slope b.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace zeromodes
