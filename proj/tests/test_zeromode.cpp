#include <doctest.h>

#include <cmath>

#include "zeromodes/zeromode.hpp"

using namespace zeromodes;

TEST_CASE("derived candidate parameters match an independent recomputation") {
  SectorFieldConfig cfg(0.04, -0.1);
  CandidateMode mode = build_candidate(cfg, {cplx(1.0, 0.0)}, 60.0);
  CHECK(mode.eps() == doctest::Approx(0.2).epsilon(1e-15));
  const double kappa_ref = 1.1 * std::sin(0.04) / (kPi * std::sin(0.4));
  CHECK(mode.kappa() == doctest::Approx(kappa_ref).epsilon(1e-15));
  CHECK(mode.kappa() == doctest::Approx(0.035957).epsilon(5e-5));
  CHECK(mode.sigma() == doctest::Approx(std::pow(kappa_ref, -0.5)).epsilon(1e-15));
  CHECK(mode.sigma() == doctest::Approx(5.2735).epsilon(5e-5));
  // sigma * sqrt(kappa) = 1 to machine accuracy
  CHECK(std::abs(mode.sigma() * std::sqrt(mode.kappa()) - 1.0) < 1e-15);
}

TEST_CASE("kappa is linear in c0") {
  // c0 = 1 - b1, so kappa(b1 = -0.1) / kappa(b1 = -0.05) = 1.1 / 1.05 exactly.
  CandidateMode a = build_candidate(SectorFieldConfig(0.04, -0.10), {cplx(1.0, 0.0)}, 40.0);
  CandidateMode b = build_candidate(SectorFieldConfig(0.04, -0.05), {cplx(1.0, 0.0)}, 40.0);
  CHECK(a.kappa() / b.kappa() == doctest::Approx(1.1 / 1.05).epsilon(1e-15));
}

TEST_CASE("wide sectors are rejected") {
  CHECK_THROWS_AS(build_candidate(SectorFieldConfig(1.0, -0.1), {cplx(1.0, 0.0)}, 40.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_candidate(SectorFieldConfig(0.04, -0.1), {}, 40.0), std::invalid_argument);
}

TEST_CASE("gaussian log factor along marked directions") {
  SectorFieldConfig cfg(0.05, -0.01);
  CandidateMode mode = build_candidate(cfg, {cplx(1.0, 0.0)}, 60.0);
  const double r = 3.7;
  const double a2 = cfg.alpha / 2.0;
  CHECK(mode.gaussian_log_factor(std::polar(r, a2)) == doctest::Approx(-0.5 * r * r).epsilon(1e-12));
  CHECK(mode.gaussian_log_factor(std::polar(r, a2 + kPi / 4.0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mode.gaussian_log_factor(std::polar(r, a2 + kPi / 2.0)) ==
        doctest::Approx(0.5 * r * r).epsilon(1e-12));
}

TEST_CASE("density hits the sentinel at polynomial zeros") {
  SectorFieldConfig cfg(0.05, -0.01);
  // P(z) = z - (2 + i)
  CandidateMode mode = build_candidate(cfg, {cplx(-2.0, -1.0), cplx(1.0, 0.0)}, 60.0);
  CHECK(mode.log_weighted_density(cplx(2.0, 1.0)) == -std::numeric_limits<double>::infinity());
  CHECK(std::isfinite(mode.log_weighted_density(cplx(3.0, 1.0))));
}

TEST_CASE("density decreases monotonically along the sector bisector") {
  SectorFieldConfig cfg(0.05, -0.01);
  CandidateMode mode = build_candidate(cfg, {cplx(1.0, 0.0)}, 500.0);
  const double psi = cfg.alpha / 2.0;
  double prev = mode.log_weighted_density(std::polar(10.0, psi));
  for (double r = 14.0; r <= 46.0; r += 4.0) {
    const double cur = mode.log_weighted_density(std::polar(r, psi));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("log-quadratic growth cancels in the weighted density") {
  // Fit the density exponent against {1, r^2, r^2 log r} along several rays;
  // the r^2 log r coefficient must be a small fraction of c0 sin(alpha)/pi,
  // which is the scale both -2F and 2 log|Phi_alpha| carry individually.
  SectorFieldConfig cfg(0.05, -0.01);
  CandidateMode mode = build_candidate(cfg, {cplx(1.0, 0.0)}, 700.0);
  const double scale = cfg.c0() * std::sin(cfg.alpha) / kPi;
  for (double psi : {cfg.alpha / 2.0 + 0.4, cfg.alpha / 2.0 + kPi / 2.0 + 0.2, 3.0, 4.8}) {
    std::vector<double> x1, x2, y;
    for (double r = 12.0; r <= 60.0; r += 3.0) {
      const double d = mode.log_weighted_density(std::polar(r, psi));
      x1.push_back(r * r);
      x2.push_back(r * r * std::log(r));
      y.push_back(d);
    }
    const Fit3 fit = least_squares_3(x1, x2, y);
    CAPTURE(psi);
    CHECK(std::abs(fit.c2) <= 0.05 * scale);
  }
}

TEST_CASE("mean-value property of log|u| on zero-free circles") {
  SectorFieldConfig cfg(0.05, -0.01);
  CandidateMode mode = build_candidate(cfg, {cplx(1.0, 0.0)}, 300.0);
  auto log_u = [&](cplx z) {
    // log|u| = log|Phi_alpha| + Re(-(1/4)(z e^{-i alpha/2})^2) + log|P|
    return mode.log_phi_alpha(z) + 0.5 * mode.gaussian_log_factor(z) +
           std::log(std::abs(mode.eval_poly(z)));
  };
  for (cplx center : {cplx(3.0, 7.0), cplx(-11.0, 2.0), cplx(4.0, -13.0)}) {
    const double rho = 0.1 * mode.sigma();
    double avg = 0.0;
    const int n = 64;
    for (int i = 0; i < n; ++i) avg += log_u(center + std::polar(rho, kTwoPi * i / n));
    avg /= n;
    CHECK(std::abs(avg - log_u(center)) < 1e-6);
  }
}

TEST_CASE("parameter identity chain") {
  SectorFieldConfig cfg(0.05, -0.01);
  CandidateMode mode = build_candidate(cfg, {cplx(1.0, 0.0)}, 200.0);
  CHECK(std::abs(1.0 / (mode.sigma() * mode.sigma()) - mode.kappa()) < 1e-15);
  // log|Phi_alpha|^2 = kappa V(rotated), same scale as the evaluator's path
  const cplx z(5.0, 2.0);
  const cplx w = z * std::exp(cplx(0.0, -(cfg.alpha + kPi) / 2.0));
  CHECK(2.0 * mode.log_phi_alpha(z) ==
        doctest::Approx(mode.kappa() * mode.evaluator().eval_V(w).value).epsilon(1e-12));
}

TEST_CASE("candidate JSON echoes the derived parameters") {
  SectorFieldConfig cfg(0.05, -0.01);
  CandidateMode mode = build_candidate(cfg, {cplx(0.0, 0.0), cplx(1.0, 0.0)}, 100.0);
  const std::string j = mode.to_json();
  CHECK(j.find("\"kappa\"") != std::string::npos);
  CHECK(j.find("\"sigma\"") != std::string::npos);
  CHECK(j.find("\"eps\"") != std::string::npos);
  CHECK(j.find("\"poly\"") != std::string::npos);
}
