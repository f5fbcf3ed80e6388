#pragma once

#include <memory>

#include "zeromodes/cells.hpp"
#include "zeromodes/numerics.hpp"

namespace zeromodes {

struct VValue {
  double value;
  double tail_bound;     // bound on the omitted |a_Q| > r_cut contribution
  bool tail_dominates;   // tail bound exceeds 1% of |value|
};

// Evaluates the subharmonic lattice sum
//   V_eps(z) = Re[ sigma^2 sum_Q ( log(1 - z^2/a_Q^2) + z^2/a_Q^2 ) ]
// over the marked points of a CellSet, and the log-modulus of the Weierstrass
// product Phi_alpha built on the same lattice. The product itself is never
// formed: |Phi_alpha| overflows doubles at |z| of a few tens, so everything
// downstream consumes log|Phi_alpha| = (kappa/2) V_eps(z e^{-i(alpha+pi)/2}).
class EntireEvaluator {
 public:
  EntireEvaluator(std::shared_ptr<const CellSet> cells, double kappa);

  const CellSet& cells() const { return *cells_; }
  double kappa() const { return kappa_; }
  double sigma() const { return cells_->sigma; }

  // Throws singularity_error within 1e-12 of a lattice point +-a_Q.
  VValue eval_V(cplx z) const;

  // -infinity at the (rotated) lattice zeros.
  double eval_logPhi_alpha(double alpha, cplx z) const;

  // Nearest lattice point among {+-a_Q}; returns the signed point.
  cplx nearest_lattice_point(cplx z) const;

 private:
  std::shared_ptr<const CellSet> cells_;
  std::vector<cplx> aq_;  // generation order; the reduction order is fixed
  // 1/a_Q^2 split into component arrays, padded to the leaf size; the padding
  // entries are zero so they contribute log|1-0| + 0 = 0.
  std::vector<double> inv_a2_re_, inv_a2_im_;
  double kappa_;
};

// Closed form v(zeta) = ((zeta^2-1)/2) log(1-zeta^2) - zeta^2/2 of the radial
// integral; principal log, analytic off the real rays |Re zeta| >= 1.
cplx eval_v_closed(cplx zeta);

// W_eps(z) = integral over theta in [-eps, eps] of v(z e^{-i theta}).
// The theta path crosses the branch cut whenever arg z is within eps of 0 or
// pi (mod 2pi) and |z| > 1; panels are split at the crossings and each side
// uses its own one-sided branch, which is what the defining double integral
// evaluates to. Im W jumps are confined to panel boundaries; Re W is smooth.
cplx eval_W(double eps, cplx z);

// Leading term (1/2)|z|^2 log|z| sin(2 eps) cos(2 arg z). Note: the measured
// Re W approaches twice this expression; see compare_V_W and the tests.
double asymptotic_W(double eps, cplx z);

struct VWComparison {
  double V;
  double re_W;
  double diff;          // V - Re W (nearest log term removed in near-lattice mode)
  double budget;        // eps|z|^2 + |log sigma|/eps + sigma|z|
  double ratio;         // |diff| / budget
  double tail_bound;
  bool near_lattice;
};

// Difference diagnostics for the lattice-sum/integral approximation. Without the near-lattice flag
// the point must avoid all sigma/4 disks around +-a_Q; with it, the nearest
// log factor sigma^2 log|1 -+ z/a_Q| is subtracted before differencing.
VWComparison compare_V_W(const EntireEvaluator& e, cplx z, bool near_lattice = false);

}  // namespace zeromodes
