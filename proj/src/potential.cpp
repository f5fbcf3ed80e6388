#include "zeromodes/potential.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

namespace zeromodes {

using json = nlohmann::ordered_json;

namespace {

double ray_distance(cplx p, double ray_angle) {
  // Distance from p to the ray {t e^{i ray_angle} : t >= 0}.
  cplx w = p * std::exp(cplx(0.0, -ray_angle));
  if (w.real() >= 0.0) return std::abs(w.imag());
  return std::abs(p);
}

}  // namespace

double SectorPotential::branch_angle(cplx z) const {
  double a = arg_0_2pi(z);
  return a < cfg_.alpha ? a + kTwoPi : a;
}

double SectorPotential::eval(cplx z) const {
  if (z == cplx(0.0, 0.0)) throw singularity_error("SectorPotential::eval: log singularity at the origin");
  const double K = cfg_.c0() * std::sin(cfg_.alpha) / kTwoPi;
  const double y = z.imag();
  const double phi = (in_omega1(cfg_, z) ? cfg_.b1 : 1.0) * y * y;
  const double psi = branch_angle(z);
  const double r2 = std::norm(z);
  const double lnr = 0.5 * std::log(r2);
  const double t = 2.0 * (psi - 0.5 * cfg_.alpha);
  return phi - K * r2 * (std::cos(t) * lnr - psi * std::sin(t));
}

std::array<double, 2> SectorPotential::grad(cplx z) const {
  if (z == cplx(0.0, 0.0)) throw singularity_error("SectorPotential::grad: log singularity at the origin");
  const double K = cfg_.c0() * std::sin(cfg_.alpha) / kTwoPi;
  const double y = z.imag();
  const double dphi_dy = 2.0 * (in_omega1(cfg_, z) ? cfg_.b1 : 1.0) * y;
  // Log-branch term: F contains -K * Re(g) with g = e^{-i alpha} z^2 log z,
  // so grad = (dphi) - K * (Re g', -Im g').
  const double psi = branch_angle(z);
  const cplx logz(std::log(std::abs(z)), psi);
  const cplx gp = std::exp(cplx(0.0, -cfg_.alpha)) * (2.0 * z * logz + z);
  return {-K * gp.real(), dphi_dy + K * gp.imag()};
}

double SectorPotential::eval_on_cut(double r, SectorSide side) const {
  const double K = cfg_.c0() * std::sin(cfg_.alpha) / kTwoPi;
  const double sa = std::sin(cfg_.alpha);
  const double phi = (side == SectorSide::omega1 ? cfg_.b1 : 1.0) * (r * sa) * (r * sa);
  const double psi = side == SectorSide::omega1 ? cfg_.alpha + kTwoPi : cfg_.alpha;
  const double t = 2.0 * (psi - 0.5 * cfg_.alpha);
  return phi - K * r * r * (std::cos(t) * std::log(r) - psi * std::sin(t));
}

std::array<double, 2> SectorPotential::grad_on_cut(double r, SectorSide side) const {
  const double K = cfg_.c0() * std::sin(cfg_.alpha) / kTwoPi;
  const double y = r * std::sin(cfg_.alpha);
  const double dphi_dy = 2.0 * (side == SectorSide::omega1 ? cfg_.b1 : 1.0) * y;
  const double psi = side == SectorSide::omega1 ? cfg_.alpha + kTwoPi : cfg_.alpha;
  const cplx z = r * std::exp(cplx(0.0, cfg_.alpha));
  const cplx logz(std::log(r), psi);
  const cplx gp = std::exp(cplx(0.0, -cfg_.alpha)) * (2.0 * z * logz + z);
  return {-K * gp.real(), dphi_dy + K * gp.imag()};
}

double SectorPotential::log_growth_coefficient(double psi) const {
  return -cfg_.c0() * std::sin(cfg_.alpha) / kTwoPi * std::cos(2.0 * (psi - 0.5 * cfg_.alpha));
}

double SectorPotential::laplacian_fd(cplx z, double h) const {
  const cplx pts[5] = {z, z + h, z - h, z + cplx(0.0, h), z - cplx(0.0, h)};
  for (const cplx& p : pts) {
    if (ray_distance(p, cfg_.alpha) < h)
      throw stencil_error("laplacian_fd: stencil crosses the cut L_alpha");
    if (ray_distance(p, 0.0) < h)
      throw stencil_error("laplacian_fd: stencil crosses the sector boundary arg z = 0");
    if (std::abs(p) < h) throw stencil_error("laplacian_fd: stencil reaches the origin");
  }
  return (eval(pts[1]) + eval(pts[2]) + eval(pts[3]) + eval(pts[4]) - 4.0 * eval(pts[0])) / (h * h);
}

// ---------------------------------------------------------------------------

cplx CircleODESolution::coefficient(int n) const {
  int an = std::abs(n);
  for (const auto& m : phi)
    if (m.n == an) return n >= 0 ? m.c : std::conj(m.c);
  return {0.0, 0.0};
}

double CircleODESolution::phi_tilde(double psi) const {
  double v = 0.0;
  for (const auto& m : phi) v += 2.0 * (m.c * std::exp(cplx(0.0, m.n * psi))).real();
  return v;
}

int CircleODESolution::max_mode() const {
  int mx = 0;
  for (const auto& m : phi) mx = std::max(mx, m.n);
  return mx;
}

std::string CircleODESolution::to_json() const {
  json j;
  j["s"] = s;
  j["beta0"] = beta0;
  json arr = json::array();
  for (const auto& m : phi) arr.push_back({m.n, m.c.real(), m.c.imag()});
  j["phi"] = arr;
  j["residual"] = residual_norm;
  return j.dump();
}

CircleODESolution CircleODESolution::from_json(const std::string& text) {
  json j = json::parse(text);
  CircleODESolution sol;
  sol.s = j.at("s").get<double>();
  sol.beta0 = j.at("beta0").get<double>();
  sol.residual_norm = j.at("residual").get<double>();
  for (const auto& row : j.at("phi")) {
    int n = row.at(0).get<int>();
    if (n < 0) continue;
    sol.phi.push_back({n, cplx(row.at(1).get<double>(), row.at(2).get<double>())});
  }
  return sol;
}

CircleODESolution solve_circle_ode(const HomogeneousFieldConfig& cfg) {
  const double sp2 = cfg.s + 2.0;
  const int m = static_cast<int>(std::lround(sp2));
  const bool integer_case = std::abs(sp2 - m) < 1e-12 && m >= 1;

  if (integer_case && std::abs(cfg.coefficient(m)) > 1e-12)
    throw resonance_error(
        "solve_circle_ode: s+2 is an integer and the profile has a mode at +-(s+2); "
        "the solution would need an r^{s+2} log r term");

  CircleODESolution sol;
  sol.s = cfg.s;
  sol.beta0 = cfg.beta0();

  double res2 = 0.0;
  for (const auto& mode : cfg.modes) {
    if (mode.n == 0) continue;
    cplx phi_n;
    if (integer_case && mode.n == m) {
      phi_n = 0.0;  // orthogonality normalization
      res2 += 2.0 * std::norm(mode.c);
    } else {
      phi_n = mode.c / (sp2 * sp2 - static_cast<double>(mode.n) * mode.n);
      cplx r = (sp2 * sp2 - static_cast<double>(mode.n) * mode.n) * phi_n - mode.c;
      res2 += 2.0 * std::norm(r);
    }
    sol.phi.push_back({mode.n, phi_n});
  }
  sol.residual_norm = std::sqrt(kTwoPi * res2);
  return sol;
}

double eval_homogeneous_F(const CircleODESolution& sol, cplx z) {
  const double sp2 = sol.s + 2.0;
  const double r = std::abs(z);
  if (r == 0.0) return 0.0;  // s > -2 so the exponent s+2 is positive
  return (sol.beta0 / (sp2 * sp2) + sol.phi_tilde(std::arg(z))) * std::pow(r, sp2);
}

SignDefiniteness sign_definite_check(const CircleODESolution& sol) {
  if (sol.beta0 == 0.0)
    throw std::invalid_argument("sign_definite_check: beta0 = 0, criterion inapplicable");
  constexpr int kGrid = 4096;
  double sup = 0.0;
  for (int i = 0; i < kGrid; ++i) sup = std::max(sup, std::abs(sol.phi_tilde(kTwoPi * i / kGrid)));
  // Between-sample bound from the l1 norm of the derivative coefficients.
  double deriv_l1 = 0.0;
  for (const auto& m : sol.phi) deriv_l1 += 2.0 * m.n * std::abs(m.c);
  sup += deriv_l1 * kPi / kGrid;

  const double sp2 = sol.s + 2.0;
  SignDefiniteness out;
  out.sup_phitilde = sup;
  out.margin = std::abs(sol.beta0) / (sp2 * sp2) - sup;
  out.sign_definite = out.margin > 0.0;
  return out;
}

// ---------------------------------------------------------------------------

double example_arc_length(double s, double eps) { return kPi / (s + 2.0 - eps); }

namespace {

double smoothstep5(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double smoothstep5_dd(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return t * (60.0 + t * (-180.0 + 120.0 * t));
}

}  // namespace

double ExampleProfile::value(double psi) const {
  psi = std::fmod(psi, kTwoPi);
  if (psi < 0.0) psi += kTwoPi;
  const double half = 0.5 * arc_length;
  auto wrap = [](double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
  };
  const double a_end = wrap(center_plus + half);   // end of I_plus
  const double b_start = wrap(center_minus - half);  // start of I_minus
  const double b_end = wrap(center_minus + half);
  const double a_start = wrap(center_plus - half);
  auto between = [&](double x, double lo, double hi) {
    // lo..hi going counterclockwise
    double d = wrap(x - lo), span = wrap(hi - lo);
    return d <= span;
  };
  if (between(psi, a_start, a_end)) return beta_plus;
  if (between(psi, b_start, b_end)) return beta_minus;
  if (between(psi, a_end, b_start)) {
    double t = wrap(psi - a_end) / wrap(b_start - a_end);
    return beta_plus + (beta_minus - beta_plus) * smoothstep5(t);
  }
  double t = wrap(psi - b_end) / wrap(a_start - b_end);
  return beta_minus + (beta_plus - beta_minus) * smoothstep5(t);
}

double ExampleProfile::second_derivative(double psi) const {
  psi = std::fmod(psi, kTwoPi);
  if (psi < 0.0) psi += kTwoPi;
  const double half = 0.5 * arc_length;
  auto wrap = [](double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
  };
  const double a_end = wrap(center_plus + half);
  const double b_start = wrap(center_minus - half);
  const double b_end = wrap(center_minus + half);
  const double a_start = wrap(center_plus - half);
  auto between = [&](double x, double lo, double hi) {
    double d = wrap(x - lo), span = wrap(hi - lo);
    return d <= span;
  };
  if (between(psi, a_start, a_end) || between(psi, b_start, b_end)) return 0.0;
  if (between(psi, a_end, b_start)) {
    const double w = wrap(b_start - a_end);
    return (beta_minus - beta_plus) * smoothstep5_dd(wrap(psi - a_end) / w) / (w * w);
  }
  const double w = wrap(a_start - b_end);
  return (beta_plus - beta_minus) * smoothstep5_dd(wrap(psi - b_end) / w) / (w * w);
}

ExampleProfile build_example_profile(double s, double eps, double beta_plus, double beta_minus,
                                     bool strict) {
  if (!(s > -1.0 && s <= 0.0)) throw std::invalid_argument("build_example_profile: s must lie in (-1, 0]");
  if (!(eps > 0.0 && eps < 0.25 * (1.0 + s)))
    throw std::invalid_argument("build_example_profile: need 0 < eps < (1+s)/4");
  if (!(beta_plus > 0.0 && beta_minus < 0.0))
    throw std::invalid_argument("build_example_profile: need beta_plus > 0 > beta_minus");

  const double L = example_arc_length(s, eps);
  if (L >= kPi) throw std::invalid_argument("build_example_profile: arcs overlap");
  if (strict && L >= kPi / 2.0)
    throw std::invalid_argument(
        "build_example_profile: arc length >= pi/2 (no (s, eps) with s <= 0 satisfies the "
        "stated inequality; pass strict = false to build anyway)");

  ExampleProfile p;
  p.s = s;
  p.eps = eps;
  p.arc_length = L;
  p.beta_plus = beta_plus;
  p.beta_minus = beta_minus;
  p.center_plus = kPi / 2.0;
  p.center_minus = 3.0 * kPi / 2.0;

  constexpr int kSamples = 4096;
  constexpr int kModes = 512;
  std::vector<double> f(kSamples);
  for (int i = 0; i < kSamples; ++i) f[i] = p.value(kTwoPi * i / kSamples);
  for (int n = 0; n <= kModes; ++n) {
    cplx c = 0.0;
    for (int i = 0; i < kSamples; ++i) c += f[i] * std::exp(cplx(0.0, -n * kTwoPi * i / kSamples));
    c /= static_cast<double>(kSamples);
    p.fourier.push_back({n, c});
  }
  return p;
}

}  // namespace zeromodes
