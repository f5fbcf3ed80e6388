#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zeromodes/numerics.hpp"

namespace zeromodes {

// Log of a nonnegative integrand; -infinity marks true zeros of the integrand.
using LogDensity = std::function<double(cplx)>;

struct ShellOptions {
  int n_rad = 4;          // radial panels per shell
  int n_ang = 32;         // angular panels over [psi_lo, psi_hi]
  double psi_lo = 0.0;    // angular sub-range (sector-restricted integrals)
  double psi_hi = kTwoPi;
  double refine_tol = 1e-3;  // relative disagreement triggering a panel split
  int max_depth = 6;
  int n_threads = 1;
};

struct ShellIntegral {
  double log_value;  // log of the integral; -infinity if the integrand vanished
  bool converged;    // false if some panel still disagreed at max depth
  double value() const;
};

// Integral of exp(density(r e^{i psi})) r dr dpsi over [R_lo, R_hi] x [psi_lo, psi_hi],
// tensor Gauss-Legendre per panel, log-sum-exp accumulation. Panels whose
// order-8 and order-12 estimates disagree by more than refine_tol are split
// 2x2, recursively up to max_depth.
ShellIntegral shell_integral(const LogDensity& density, double R_lo, double R_hi,
                             const ShellOptions& opts = {});

enum class Verdict { convergent, divergent, inconclusive };
std::string to_string(Verdict v);

struct ShellReport {
  std::vector<double> radii;            // N+1 shell boundaries
  std::vector<double> shell_log_values; // N log-integrals
  std::vector<double> log_ratios;       // N-1 values log(I_{k+1}/I_k)
  Verdict verdict;
  std::string note;
  bool quadrature_converged;
  // parameters echoed
  double q;
  int m;
  ShellOptions options;

  std::string to_json() const;
  std::string to_csv() const;  // columns R_mid, I_k
};

struct VerdictOptions {
  double r_start = 5.0;
  double shell_width = 2.0;
  int n_shells = 15;
  double q = 0.9;
  int m = 5;
  ShellOptions shell;
};

// Ratio test over expanding annuli: convergent iff the last m shell ratios are
// all below q, divergent iff all above 1/q, inconclusive otherwise. Shells
// whose integrand is numerically zero throughout yield the convergent verdict
// with a note.
ShellReport convergence_verdict(const LogDensity& density, const VerdictOptions& opts = {});

}  // namespace zeromodes
