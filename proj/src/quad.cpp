#include "zeromodes/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

namespace zeromodes {

using json = nlohmann::ordered_json;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double panel_log_integral(const LogDensity& density, double r0, double r1, double t0, double t1,
                          int order) {
  const auto& gl = gauss_legendre(order);
  const double rm = 0.5 * (r0 + r1), rh = 0.5 * (r1 - r0);
  const double tm = 0.5 * (t0 + t1), th = 0.5 * (t1 - t0);
  // First pass for the max exponent, second for the compensated sum.
  std::vector<double> lw(order * order);
  double mx = kNegInf;
  for (int i = 0; i < order; ++i) {
    const double r = rm + rh * gl.nodes[i];
    for (int j = 0; j < order; ++j) {
      const double t = tm + th * gl.nodes[j];
      const double d = density(r * std::exp(cplx(0.0, t)));
      double v = d + std::log(r * gl.weights[i] * gl.weights[j]);
      lw[i * order + j] = v;
      mx = std::max(mx, v);
    }
  }
  if (mx == kNegInf) return kNegInf;
  double s = 0.0;
  for (double v : lw) s += std::exp(v - mx);
  return mx + std::log(s * rh * th);
}

bool log_close(double a, double b, double tol) {
  if (a == kNegInf && b == kNegInf) return true;
  if (a == kNegInf || b == kNegInf) return false;
  return std::abs(std::exp(a - b) - 1.0) <= tol;
}

double refine_panel(const LogDensity& density, double r0, double r1, double t0, double t1,
                    int depth, const ShellOptions& opts, bool& converged, double coarse) {
  const double fine = panel_log_integral(density, r0, r1, t0, t1, 12);
  if (log_close(coarse, fine, opts.refine_tol)) return fine;
  if (depth >= opts.max_depth) {
    converged = false;
    return fine;
  }
  const double rm = 0.5 * (r0 + r1), tm = 0.5 * (t0 + t1);
  double acc = kNegInf;
  for (auto [a0, a1, b0, b1] : {std::array{r0, rm, t0, tm}, {rm, r1, t0, tm}, {r0, rm, tm, t1}, {rm, r1, tm, t1}}) {
    const double child_base = panel_log_integral(density, a0, a1, b0, b1, 8);
    acc = log_add_exp(acc, refine_panel(density, a0, a1, b0, b1, depth + 1, opts, converged, child_base));
  }
  return acc;
}

}  // namespace

double ShellIntegral::value() const { return std::exp(log_value); }

ShellIntegral shell_integral(const LogDensity& density, double R_lo, double R_hi,
                             const ShellOptions& opts) {
  if (!(R_lo > 0.0 && R_hi > R_lo)) throw std::invalid_argument("shell_integral: need 0 < R_lo < R_hi");
  if (opts.n_rad < 4 || opts.n_ang < 4) throw std::invalid_argument("shell_integral: panel counts must be >= 4");

  // First sweep at base order. The refinement pass (order comparison plus
  // recursive 2x2 splits) is spent only on panels whose contribution can move
  // the shell value: anything 30 e-folds below the dominant panel cannot.
  struct Panel {
    double r0, r1, t0, t1, log_base;
  };
  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(opts.n_rad) * opts.n_ang);
  double mx = kNegInf;
  for (int i = 0; i < opts.n_rad; ++i) {
    const double r0 = R_lo + (R_hi - R_lo) * i / opts.n_rad;
    const double r1 = R_lo + (R_hi - R_lo) * (i + 1) / opts.n_rad;
    for (int j = 0; j < opts.n_ang; ++j) {
      const double t0 = opts.psi_lo + (opts.psi_hi - opts.psi_lo) * j / opts.n_ang;
      const double t1 = opts.psi_lo + (opts.psi_hi - opts.psi_lo) * (j + 1) / opts.n_ang;
      const double lb = panel_log_integral(density, r0, r1, t0, t1, 8);
      panels.push_back({r0, r1, t0, t1, lb});
      mx = std::max(mx, lb);
    }
  }

  ShellIntegral out{kNegInf, true};
  for (const Panel& p : panels) {
    double contribution;
    if (p.log_base >= mx - 30.0)
      contribution = refine_panel(density, p.r0, p.r1, p.t0, p.t1, 0, opts, out.converged, p.log_base);
    else
      contribution = p.log_base;
    out.log_value = log_add_exp(out.log_value, contribution);
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::convergent: return "convergent";
    case Verdict::divergent: return "divergent";
    default: return "inconclusive";
  }
}

ShellReport convergence_verdict(const LogDensity& density, const VerdictOptions& opts) {
  if (!(opts.n_shells >= opts.m && opts.m >= 3)) throw std::invalid_argument("convergence_verdict: need n_shells >= m >= 3");
  if (!(opts.q > 0.0 && opts.q < 1.0)) throw std::invalid_argument("convergence_verdict: need 0 < q < 1");

  ShellReport rep;
  rep.q = opts.q;
  rep.m = opts.m;
  rep.options = opts.shell;
  rep.quadrature_converged = true;
  for (int k = 0; k <= opts.n_shells; ++k) rep.radii.push_back(opts.r_start + k * opts.shell_width);

  auto run_shell = [&](int k) {
    return shell_integral(density, rep.radii[k], rep.radii[k + 1], opts.shell);
  };
  std::vector<ShellIntegral> shells(opts.n_shells);
  if (opts.shell.n_threads > 1) {
    std::vector<std::future<ShellIntegral>> futs;
    futs.reserve(opts.n_shells);
    for (int k = 0; k < opts.n_shells; ++k)
      futs.push_back(std::async(std::launch::async, run_shell, k));
    for (int k = 0; k < opts.n_shells; ++k) shells[k] = futs[k].get();  // fixed gather order
  } else {
    for (int k = 0; k < opts.n_shells; ++k) shells[k] = run_shell(k);
  }
  for (const auto& s : shells) {
    rep.shell_log_values.push_back(s.log_value);
    rep.quadrature_converged = rep.quadrature_converged && s.converged;
  }

  bool all_zero = true;
  for (double lv : rep.shell_log_values)
    if (lv != kNegInf) all_zero = false;
  if (all_zero) {
    rep.verdict = Verdict::convergent;
    rep.note = "integrand numerically zero on every shell";
    return rep;
  }

  for (std::size_t k = 0; k + 1 < rep.shell_log_values.size(); ++k) {
    const double a = rep.shell_log_values[k], b = rep.shell_log_values[k + 1];
    double lr;
    if (a == kNegInf && b == kNegInf)
      lr = kNegInf;  // both zero: counts to the convergent side
    else if (b == kNegInf)
      lr = kNegInf;
    else if (a == kNegInf)
      lr = std::numeric_limits<double>::infinity();
    else
      lr = b - a;
    rep.log_ratios.push_back(lr);
  }

  const double lq = std::log(opts.q);
  bool all_below = true, all_above = true;
  const int first = std::max(0, static_cast<int>(rep.log_ratios.size()) - opts.m);
  for (int k = first; k < static_cast<int>(rep.log_ratios.size()); ++k) {
    all_below = all_below && rep.log_ratios[k] < lq;
    all_above = all_above && rep.log_ratios[k] > -lq;
  }
  rep.verdict = all_below ? Verdict::convergent : (all_above ? Verdict::divergent : Verdict::inconclusive);
  if (!rep.quadrature_converged)
    rep.note = "some panels did not converge at max refinement depth";
  return rep;
}

std::string ShellReport::to_json() const {
  json j;
  j["radii"] = radii;
  json lv = json::array();
  for (double v : shell_log_values) lv.push_back(std::isfinite(v) ? json(v) : json(nullptr));
  j["shell_log_values"] = lv;
  json lr = json::array();
  for (double v : log_ratios) lr.push_back(std::isfinite(v) ? json(v) : json(nullptr));
  j["log_ratios"] = lr;
  j["verdict"] = to_string(verdict);
  j["note"] = note;
  j["quadrature_converged"] = quadrature_converged;
  j["q"] = q;
  j["m"] = m;
  j["n_rad"] = options.n_rad;
  j["n_ang"] = options.n_ang;
  j["psi_lo"] = options.psi_lo;
  j["psi_hi"] = options.psi_hi;
  return j.dump();
}

std::string ShellReport::to_csv() const {
  std::ostringstream os;
  os << "R_mid,I_k\n";
  os.precision(17);
  for (std::size_t k = 0; k < shell_log_values.size(); ++k) {
    const double mid = 0.5 * (radii[k] + radii[k + 1]);
    os << mid << "," << std::exp(shell_log_values[k]) << "\n";
  }
  return os.str();
}

}  // namespace zeromodes
