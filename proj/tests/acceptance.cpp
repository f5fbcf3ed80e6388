// Acceptance suite: one check per numbered criterion, each at its stated
// tolerance, printing one PASS/FAIL line. Run with a criterion number (1-10)
// or no argument for all. The exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include "zeromodes/cells.hpp"
#include "zeromodes/conformal.hpp"
#include "zeromodes/entire.hpp"
#include "zeromodes/field.hpp"
#include "zeromodes/potential.hpp"
#include "zeromodes/quad.hpp"
#include "zeromodes/zeromode.hpp"

using namespace zeromodes;

namespace {

struct CritResult {
  bool pass;
  std::string detail;
};

// --------------------------------------------------------------- criterion 1

CritResult criterion1_poisson() {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> logr(std::log(0.5), std::log(50.0));
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  const double h = 1e-3;
  double worst = 0.0;
  for (auto [alpha, b1] : {std::pair{0.3, -0.1}, {kPi / 2.0, -1.0}, {2.5, -0.4}}) {
    SectorFieldConfig cfg(alpha, b1);
    SectorPotential pot(cfg);
    int accepted = 0;
    while (accepted < 100) {
      const double r = std::exp(logr(rng));
      const double psi = ang(rng);
      const cplx z = std::polar(r, psi);
      // admissible: the whole stencil stays inside one sector
      const double pa = arg_0_2pi(z);
      const double d_rays = std::min({pa, kTwoPi - pa, std::abs(pa - alpha)}) * r;
      if (d_rays < 4.0 * h) continue;
      ++accepted;
      const double lap = pot.laplacian_fd(z, h);
      const double B = sector_field_value(cfg, z);
      worst = std::max(worst, std::abs(lap - B) / std::abs(B));
    }
  }
  std::ostringstream os;
  os << "max rel err " << worst << " (tol 1e-4), 300 points";
  return {worst < 1e-4, os.str()};
}

// --------------------------------------------------------------- criterion 2

CritResult criterion2_gluing() {
  double worst = 0.0;
  for (auto [alpha, b1] : {std::pair{0.3, -0.1}, {kPi / 2.0, -1.0}, {2.5, -0.4}}) {
    SectorPotential pot(SectorFieldConfig(alpha, b1));
    for (double r : {1.0, 10.0, 100.0}) {
      worst = std::max(worst, std::abs(pot.eval_on_cut(r, SectorSide::omega1) -
                                       pot.eval_on_cut(r, SectorSide::omega2)));
      auto g1 = pot.grad_on_cut(r, SectorSide::omega1);
      auto g2 = pot.grad_on_cut(r, SectorSide::omega2);
      worst = std::max({worst, std::abs(g1[0] - g2[0]), std::abs(g1[1] - g2[1])});
    }
  }
  std::ostringstream os;
  os << "max two-sided value/gradient gap " << worst << " (tol 1e-8)";
  return {worst < 1e-8, os.str()};
}

// --------------------------------------------------------------- criterion 3

cplx v_integral_oracle(cplx z) {
  const double T = 2e4;
  const cplx z2 = z * z;
  const auto& gl = gauss_legendre(40);
  cplx total = 0.0;
  const int n_panels = 400;
  for (int p = 0; p < n_panels; ++p) {
    const double a = std::pow(T, static_cast<double>(p) / n_panels);
    const double b = std::pow(T, static_cast<double>(p + 1) / n_panels);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < 40; ++i) {
      const double t = mid + half * gl.nodes[i];
      total += gl.weights[i] * half * (t * std::log(cplx(1.0, 0.0) - z2 / (t * t)) + z2 / t);
    }
  }
  for (int k = 2; k < 12; ++k)
    total -= std::pow(z2, k) / (k * (2.0 * k - 2.0) * std::pow(T, 2.0 * k - 2.0));
  return total;
}

CritResult criterion3_v_closed() {
  std::vector<cplx> pts = {cplx(0.0, 1e-9), cplx(0.0, 0.5)};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-1.9, 1.9), im(0.05, 1.2);
  while (pts.size() < 20) {
    const cplx z(re(rng), (pts.size() % 2 ? 1.0 : -1.0) * im(rng));
    if (std::abs(z) <= 2.0) pts.push_back(z);
  }
  double worst = 0.0;
  for (const cplx& z : pts) worst = std::max(worst, std::abs(eval_v_closed(z) - v_integral_oracle(z)));
  const double v0 = std::abs(eval_v_closed(cplx(0.0, 0.0)));
  const double vhalf = eval_v_closed(cplx(0.0, 0.5)).real();
  std::ostringstream os;
  os << "max |closed - quadrature| " << worst << " (tol 1e-8); v(0) = " << v0
     << ", v(0.5i) = " << vhalf << " (ref -0.0144647)";
  return {worst < 1e-8 && v0 == 0.0 && std::abs(vhalf + 0.0144647) < 1e-6, os.str()};
}

// --------------------------------------------------------------- criterion 4

CritResult criterion4_asymptotics() {
  // As stated: Re W / ((1/2) r^2 log r sin 2eps) in [0.9, 1.1] along phi = 0.
  // The defining integral's true leading coefficient is twice the stated
  // denominator (see the decisions ledger), so the as-stated band cannot be
  // met; the check is implemented faithfully and the doubled-denominator
  // ratio is reported alongside.
  const double eps = 0.1;
  bool pass = true;
  std::ostringstream os;
  os << "ratios vs (1/2) r^2 log r sin 2eps:";
  for (double r : {1e3, 1e4, 1e5, 1e6}) {
    const double ratio = eval_W(eps, cplx(r, 0.0)).real() /
                         (0.5 * r * r * std::log(r) * std::sin(2.0 * eps));
    os << " " << ratio;
    pass = pass && ratio >= 0.9 && ratio <= 1.1;
  }
  os << " (band [0.9, 1.1]; same ratios against the full-strength term are half these)";
  return {pass, os.str()};
}

// --------------------------------------------------------------- criterion 5

CritResult criterion5_cells() {
  bool pass = true;
  std::ostringstream os;
  for (auto [eps, sigma] : {std::pair{0.1, 1.0}, {0.2, 5.27}}) {
    CellSet cs = generate_cells(eps, sigma, 200.0);
    CellValidation v = validate_cells(cs);
    const bool ok = v.max_area_dev <= 1e-10 * sigma * sigma &&
                    v.max_first_moment <= 1e-10 * sigma * sigma * sigma &&
                    v.min_pair_distance >= sigma / 2.0 && v.total_area_mismatch <= 1e-8;
    pass = pass && ok;
    os << "(eps=" << eps << ", sigma=" << sigma << "): n=" << cs.cells.size()
       << " areaDev=" << v.max_area_dev << " moment=" << v.max_first_moment
       << " minDist=" << v.min_pair_distance << " (need >= " << sigma / 2.0
       << ") areaMismatch=" << v.total_area_mismatch << (ok ? " ok; " : " FAIL; ");
  }
  return {pass, os.str()};
}

// --------------------------------------------------------------- criterion 6

CritResult criterion6_lattice_vs_integral() {
  const double eps = 0.1, sigma = 1.0;
  auto cells = std::make_shared<const CellSet>(generate_cells(eps, sigma, 2000.0));
  EntireEvaluator e(cells, 1.0 / (sigma * sigma));

  std::vector<double> x_sq, x_log, diff_abs, v_abs;
  double worst_ratio = 0.0;
  for (int i = 0; i < 37; ++i) {
    const double r = 20.0 + (200.0 - 20.0) * i / 36.0;
    const VWComparison c = compare_V_W(e, std::polar(r, kPi / 2.0));
    x_sq.push_back(r * r);
    x_log.push_back(r * r * std::log(r));
    diff_abs.push_back(std::abs(c.diff));
    v_abs.push_back(std::abs(c.V));
    worst_ratio = std::max(worst_ratio, c.ratio);
  }
  // "No log-quadratic leakage": joint fit against {1, r^2, r^2 log r}. The
  // r^2 regressor absorbs the allowed eps O(|z|^2) error term, leaving the
  // r^2 log r coefficient as the leakage estimate.
  const Fit3 fd = least_squares_3(x_sq, x_log, diff_abs);
  const Fit3 fv = least_squares_3(x_sq, x_log, v_abs);
  const double slope_frac = std::abs(fd.c2) / std::abs(fv.c2);
  std::ostringstream os;
  os << "log-quadratic coefficient of |V-ReW| is " << slope_frac * 100.0
     << "% of |V|'s (tol 5%); max diff/budget " << worst_ratio << " (tol 10)";
  return {slope_frac < 0.05 && worst_ratio <= 10.0, os.str()};
}

// --------------------------------------------------------------- criterion 7

CritResult criterion7_existence() {
  SectorFieldConfig cfg(0.05, -0.01);
  const double r_cut = 10.0 * (5.0 + 2.0 * 30.0);  // covers the doubled run too
  bool pass = true;
  std::ostringstream os;
  for (int d = 0; d <= 1; ++d) {
    std::vector<cplx> poly(static_cast<std::size_t>(d) + 1, cplx(0.0, 0.0));
    poly.back() = 1.0;
    CandidateMode mode = build_candidate(cfg, poly, r_cut);
    auto density = [&](cplx z) { return mode.log_weighted_density(z); };

    VerdictOptions base;
    base.shell.n_threads = std::max(2u, std::thread::hardware_concurrency());
    base.shell.n_ang = std::max(32, 16 * static_cast<int>(std::ceil(35.0 / mode.sigma())));
    ShellReport rep = convergence_verdict(density, base);

    VerdictOptions dbl = base;
    dbl.n_shells = 30;
    dbl.shell.n_rad *= 2;
    dbl.shell.n_ang *= 2;
    ShellReport rep2 = convergence_verdict(density, dbl);

    const bool ok = rep.verdict == Verdict::convergent && rep2.verdict == Verdict::convergent;
    pass = pass && ok;
    os << "P=z^" << d << ": " << to_string(rep.verdict) << " / doubled "
       << to_string(rep2.verdict) << "; ";
  }
  return {pass, os.str()};
}

// --------------------------------------------------------------- criterion 8

CritResult criterion8_nonexistence() {
  SectorFieldConfig cfg(3.0, -0.3);
  std::ostringstream os;

  SectorLowerBound lb = sector_S_lower_bound(cfg, 0.1, 1e3, 512, 128);
  SectorLowerBound lb2 = sector_S_lower_bound(cfg, 0.1, 1e3, 1024, 256);
  const double stability = std::abs(lb2.C_est - lb.C_est) / std::max(1e-12, std::abs(lb.C_est));
  const bool c_positive = lb.C_est > 0.0;
  const bool stable = stability < 0.05;
  os << "C_est = " << lb.C_est << " (need > 0; doubled-grid drift " << stability * 100.0
     << "%, theta-condition " << (lb.theta_condition ? "holds" : "fails") << "); ";

  // Divergence of the probe family under both weights, restricted to the
  // sectors where -F (resp. +F) is log-quadratically positive. In plain polar
  // angles both sectors are single arcs; F itself is C^1 across L_alpha.
  SectorPotential pot(cfg);
  const double a2 = cfg.alpha / 2.0;
  const double S_lo = std::fmod(a2 + 7.0 * kPi / 4.0, kTwoPi);
  const double S_hi = std::fmod(a2 + 9.0 * kPi / 4.0, kTwoPi);
  const double T_lo = S_hi;
  const double T_hi = a2 + 3.0 * kPi / 4.0;
  bool all_divergent = true;
  for (int k = 0; k <= 2; ++k) {
    for (int side = 0; side < 2; ++side) {
      auto density = [&, k, side](cplx z) {
        const double probe = -0.25 * (z * z).real() + 2.0 * k * std::log(std::abs(z));
        return (side == 0 ? -2.0 : 2.0) * pot.eval(z) + probe;
      };
      VerdictOptions vo;
      vo.shell.n_ang = 48;
      vo.shell.psi_lo = side == 0 ? S_lo : T_lo;
      vo.shell.psi_hi = side == 0 ? S_hi : T_hi;
      ShellReport rep = convergence_verdict(density, vo);
      all_divergent = all_divergent && rep.verdict == Verdict::divergent;
      if (rep.verdict != Verdict::divergent)
        os << "probe k=" << k << (side == 0 ? " on S" : " on T") << ": " << to_string(rep.verdict)
           << "; ";
    }
  }
  os << (all_divergent ? "all 6 probe verdicts divergent" : "divergence check incomplete");
  return {c_positive && stable && all_divergent, os.str()};
}

// --------------------------------------------------------------- criterion 9

CritResult criterion9_univalence() {
  bool probes_pass = true;
  bool angles_pass = true;
  std::ostringstream os;
  for (double A : {0.25, 0.5, 1.0}) {
    LogPowerMap m(A, choose_varsigma(A), 9.9);
    UnivalenceReport rep = univalence_probe([&](cplx w) { return map_halfplane(m, w); },
                                            ProbeRegion::half_plane(10.0, 1e4), 256);
    probes_pass = probes_pass && rep.pass;
    double worst = 0.0;
    for (double rho : {1e3, 1e4, 1e5, 1e6}) {
      const double probed = probe_boundary_angle(m, rho);
      const double formula = boundary_angle(m, rho).value;
      worst = std::max(worst, std::abs(probed - formula) / std::abs(probed));
    }
    angles_pass = angles_pass && worst <= 0.20;
    os << "A=" << A << ": probe " << (rep.pass ? "pass" : "FAIL") << ", worst angle dev "
       << worst * 100.0 << "%; ";
  }
  os << "(angle tol 20%)";
  return {probes_pass && angles_pass, os.str()};
}

// -------------------------------------------------------------- criterion 10

CritResult criterion10_nonresonance() {
  HomogeneousFieldConfig cfg(-0.5, {{0, 1.0}, {1, 0.05}});  // b = 1 + 0.1 cos psi
  CircleODESolution sol = solve_circle_ode(cfg);
  SignDefiniteness sd = sign_definite_check(sol);

  // Dense angular scan oracle for the margin.
  double sup = 0.0;
  for (int i = 0; i < 200000; ++i) sup = std::max(sup, std::abs(sol.phi_tilde(kTwoPi * i / 200000)));
  const double margin_ref = 1.0 / 2.25 - sup;

  bool verdicts_ok = true;
  for (int k = 0; k <= 1; ++k) {
    ShellReport rep = convergence_verdict([&, k](cplx z) {
      return -2.0 * eval_homogeneous_F(sol, z) + 2.0 * k * std::log(std::abs(z));
    });
    verdicts_ok = verdicts_ok && rep.verdict == Verdict::convergent;
  }

  bool resonance_ok = false;
  try {
    solve_circle_ode(HomogeneousFieldConfig(0.0, {{2, 0.5}}));  // b = cos 2 psi
  } catch (const resonance_error&) {
    resonance_ok = true;
  }

  std::ostringstream os;
  os << "residual " << sol.residual_norm << " (tol 1e-10); margin " << sd.margin
     << " (ref " << margin_ref << ", target ~0.364); P in {1, z} "
     << (verdicts_ok ? "convergent" : "NOT convergent") << "; resonance error "
     << (resonance_ok ? "raised" : "MISSING");
  const bool pass = sol.residual_norm < 1e-10 && sd.sign_definite &&
                    std::abs(sd.margin - 0.364) < 1e-3 && std::abs(sd.margin - margin_ref) < 1e-4 &&
                    verdicts_ok && resonance_ok;
  return {pass, os.str()};
}

// ----------------------------------------------------------------------------

struct Criterion {
  const char* name;
  double budget_s;
  CritResult (*fn)();
};

const Criterion kCriteria[] = {
    {"Poisson consistency", 1.0, criterion1_poisson},
    {"C1 gluing across L_alpha", 1.0, criterion2_gluing},
    {"Appendix closed form v", 5.0, criterion3_v_closed},
    {"W asymptotics along phi = 0", 5.0, criterion4_asymptotics},
    {"Cell partition invariants", 5.0, criterion5_cells},
    {"Lattice sum vs integral approximation", 60.0, criterion6_lattice_vs_integral},
    {"Existence regime verdicts", 300.0, criterion7_existence},
    {"Nonexistence regime mechanism", 300.0, criterion8_nonexistence},
    {"Univalence probe and boundary angles", 60.0, criterion9_univalence},
    {"Non-resonance analysis", 60.0, criterion10_nonresonance},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (int i = 1; i <= 10; ++i) {
    if (only != 0 && only != i) continue;
    const Criterion& c = kCriteria[i - 1];
    const auto t0 = std::chrono::steady_clock::now();
    CritResult r;
    try {
      r = c.fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = secs <= c.budget_s;
    const bool pass = r.pass && in_budget;
    if (!pass) ++failures;
    std::printf("[criterion %2d] %s  %s — %s (%.2f s%s)\n", i, pass ? "PASS" : "FAIL", c.name,
                r.detail.c_str(), secs, in_budget ? "" : ", OVER BUDGET");
  }
  return failures;
}
