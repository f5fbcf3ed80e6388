#include "zeromodes/zeromode.hpp"

#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

namespace zeromodes {

using json = nlohmann::ordered_json;

CandidateMode::CandidateMode(SectorFieldConfig cfg, std::vector<cplx> poly_coeffs,
                             std::shared_ptr<const CellSet> cells)
    : cfg_(cfg),
      eps_(std::sqrt(cfg.alpha)),
      kappa_(cfg.c0() * std::sin(cfg.alpha) / (kPi * std::sin(2.0 * std::sqrt(cfg.alpha)))),
      sigma_(1.0 / std::sqrt(kappa_)),
      poly_(std::move(poly_coeffs)),
      cells_(std::move(cells)),
      evaluator_(cells_, kappa_),
      potential_(cfg) {
  if (poly_.empty()) throw std::invalid_argument("CandidateMode: polynomial must be nonempty");
  if (std::abs(cells_->eps - eps_) > 1e-12 || std::abs(cells_->sigma - sigma_) > 1e-9)
    throw std::invalid_argument("CandidateMode: cell set does not match the derived (eps, sigma)");
}

cplx CandidateMode::eval_poly(cplx z) const {
  cplx acc = 0.0;
  for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double CandidateMode::gaussian_log_factor(cplx z) const {
  const cplx w = z * std::exp(cplx(0.0, -0.5 * cfg_.alpha));
  return -0.5 * (w * w).real();
}

double CandidateMode::log_weighted_density(cplx z) const {
  if (z == cplx(0.0, 0.0)) throw singularity_error("log_weighted_density: F undefined at the origin");
  const double log_phi = log_phi_alpha(z);
  const cplx P = eval_poly(z);
  if (log_phi == -std::numeric_limits<double>::infinity() || P == cplx(0.0, 0.0))
    return -std::numeric_limits<double>::infinity();
  return -2.0 * potential_.eval(z) + 2.0 * log_phi + gaussian_log_factor(z) +
         2.0 * std::log(std::abs(P));
}

std::string CandidateMode::to_json() const {
  json j;
  j["field"] = json::parse(cfg_.to_json());
  j["eps"] = eps_;
  j["kappa"] = kappa_;
  j["sigma"] = sigma_;
  j["r_cut"] = cells_->r_cut;
  j["n_cells"] = cells_->cells.size();
  json poly = json::array();
  for (const cplx& c : poly_) poly.push_back({c.real(), c.imag()});
  j["poly"] = poly;
  return j.dump();
}

CandidateMode build_candidate(const SectorFieldConfig& cfg, std::vector<cplx> poly_coeffs,
                              double r_cut) {
  const double eps = std::sqrt(cfg.alpha);
  if (!(eps < kPi / 8.0))
    throw std::invalid_argument("build_candidate: sqrt(alpha) >= pi/8, sector too wide for the cell partition");
  const double kappa = cfg.c0() * std::sin(cfg.alpha) / (kPi * std::sin(2.0 * eps));
  const double sigma = 1.0 / std::sqrt(kappa);
  auto cells = std::make_shared<const CellSet>(generate_cells(eps, sigma, r_cut));
  return CandidateMode(cfg, std::move(poly_coeffs), std::move(cells));
}

}  // namespace zeromodes
