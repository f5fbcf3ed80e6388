#pragma once

#include <memory>
#include <string>
#include <vector>

#include "zeromodes/entire.hpp"
#include "zeromodes/potential.hpp"

namespace zeromodes {

// Candidate zero mode u(z) = Phi_alpha(z) exp(-1/4 (z e^{-i alpha/2})^2) P(z)
// with all parameters derived from the field configuration:
//   eps = sqrt(alpha), kappa = c0 sin(alpha) / (pi sin(2 eps)), sigma = kappa^{-1/2}.
//
// The candidate is tested in the weighted space u e^{-F} in L2: the exposed
// density is log(e^{-2F} |u|^2). The Gaussian factor and the product's lattice
// are engineered so the |z|^2 log|z| growth of -2F and 2 log|Phi_alpha| cancel
// along every ray, leaving a quadratically decaying density for small alpha.
class CandidateMode {
 public:
  CandidateMode(SectorFieldConfig cfg, std::vector<cplx> poly_coeffs,
                std::shared_ptr<const CellSet> cells);

  const SectorFieldConfig& config() const { return cfg_; }
  double eps() const { return eps_; }
  double kappa() const { return kappa_; }
  double sigma() const { return sigma_; }
  const std::vector<cplx>& poly_coeffs() const { return poly_; }
  const EntireEvaluator& evaluator() const { return evaluator_; }
  const SectorPotential& potential() const { return potential_; }

  // log(e^{-2F(z)} |u(z)|^2); -infinity at zeros of Phi_alpha or P.
  double log_weighted_density(cplx z) const;

  // log |exp(-1/4 (z e^{-i alpha/2})^2)|^2 = -1/2 Re((z e^{-i alpha/2})^2).
  double gaussian_log_factor(cplx z) const;

  double log_phi_alpha(cplx z) const { return evaluator_.eval_logPhi_alpha(cfg_.alpha, z); }

  cplx eval_poly(cplx z) const;

  std::string to_json() const;

 private:
  SectorFieldConfig cfg_;
  double eps_, kappa_, sigma_;
  std::vector<cplx> poly_;
  std::shared_ptr<const CellSet> cells_;
  EntireEvaluator evaluator_;
  SectorPotential potential_;
};

// Derives eps/kappa/sigma from cfg, generates the cell set out to r_cut and
// assembles the evaluator. Rejects sqrt(alpha) >= pi/8.
CandidateMode build_candidate(const SectorFieldConfig& cfg, std::vector<cplx> poly_coeffs,
                              double r_cut);

}  // namespace zeromodes
