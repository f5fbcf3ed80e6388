#include "zeromodes/field.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

namespace zeromodes {

using json = nlohmann::ordered_json;

SectorFieldConfig::SectorFieldConfig(double alpha_, double b1_) : alpha(alpha_), b1(b1_) {
  if (!(alpha > 0.0 && alpha < kPi)) throw std::invalid_argument("SectorFieldConfig: alpha must lie in (0, pi)");
  if (!(b1 < 0.0)) throw std::invalid_argument("SectorFieldConfig: b1 must be negative");
}

std::string SectorFieldConfig::to_json() const {
  json j;
  j["kind"] = "sector";
  j["alpha"] = alpha;
  j["b1"] = b1;
  return j.dump();
}

SectorFieldConfig SectorFieldConfig::from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("kind").get<std::string>() != "sector") throw std::invalid_argument("SectorFieldConfig: kind mismatch");
  return SectorFieldConfig(j.at("alpha").get<double>(), j.at("b1").get<double>());
}

HomogeneousFieldConfig::HomogeneousFieldConfig(double s_, std::vector<Mode> modes_)
    : s(s_), modes(std::move(modes_)) {
  if (!(s > -2.0 && s <= 0.0)) throw std::invalid_argument("HomogeneousFieldConfig: s must lie in (-2, 0]");
  for (auto& m : modes) {
    if (m.n < 0) throw std::invalid_argument("HomogeneousFieldConfig: store modes with n >= 0 only");
    if (m.n == 0 && std::abs(m.c.imag()) > 1e-14)
      throw std::invalid_argument("HomogeneousFieldConfig: mean mode must be real");
  }
}

cplx HomogeneousFieldConfig::coefficient(int n) const {
  int an = std::abs(n);
  for (const auto& m : modes)
    if (m.n == an) return n >= 0 ? m.c : std::conj(m.c);
  return {0.0, 0.0};
}

double HomogeneousFieldConfig::beta0() const { return coefficient(0).real(); }

double HomogeneousFieldConfig::profile(double psi) const {
  double v = beta0();
  for (const auto& m : modes) {
    if (m.n == 0) continue;
    v += 2.0 * (m.c * std::exp(cplx(0.0, m.n * psi))).real();
  }
  return v;
}

int HomogeneousFieldConfig::max_mode() const {
  int mx = 0;
  for (const auto& m : modes) mx = std::max(mx, m.n);
  return mx;
}

std::string HomogeneousFieldConfig::to_json() const {
  json j;
  j["kind"] = "homogeneous";
  j["s"] = s;
  json arr = json::array();
  for (const auto& m : modes) arr.push_back({m.n, m.c.real(), m.c.imag()});
  j["fourier"] = arr;
  return j.dump();
}

HomogeneousFieldConfig HomogeneousFieldConfig::from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("kind").get<std::string>() != "homogeneous")
    throw std::invalid_argument("HomogeneousFieldConfig: kind mismatch");
  std::vector<Mode> modes;
  for (const auto& row : j.at("fourier")) {
    int n = row.at(0).get<int>();
    cplx c(row.at(1).get<double>(), row.at(2).get<double>());
    if (n < 0) continue;  // negative rows are redundant under conjugate symmetry
    modes.push_back({n, c});
  }
  return HomogeneousFieldConfig(j.at("s").get<double>(), std::move(modes));
}

bool in_omega1(const SectorFieldConfig& cfg, cplx z) {
  double a = arg_0_2pi(z);
  return a > 0.0 && a < cfg.alpha;
}

double sector_field_value(const SectorFieldConfig& cfg, cplx z) {
  if (z == cplx(0.0, 0.0)) throw singularity_error("sector_field_value: field undefined at the origin");
  return in_omega1(cfg, z) ? 2.0 * cfg.b1 : 2.0 * cfg.b2();
}

double homogeneous_field_value(const HomogeneousFieldConfig& cfg, cplx z) {
  if (z == cplx(0.0, 0.0) && cfg.s < 0.0)
    throw singularity_error("homogeneous_field_value: unbounded at the origin for s < 0");
  double r = std::abs(z);
  if (r == 0.0) return cfg.profile(0.0);  // s == 0: constant in r
  return cfg.profile(std::arg(z)) * std::pow(r, cfg.s);
}

}  // namespace zeromodes
