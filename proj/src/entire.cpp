#include "zeromodes/entire.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zeromodes {

namespace {

constexpr std::size_t kLeaf = 64;
constexpr std::size_t kBlock = 16;  // renormalization stride within a leaf

}  // namespace

EntireEvaluator::EntireEvaluator(std::shared_ptr<const CellSet> cells, double kappa)
    : cells_(std::move(cells)), kappa_(kappa) {
  if (!(kappa_ > 0.0)) throw std::invalid_argument("EntireEvaluator: kappa must be positive");
  CellValidation v = validate_cells(*cells_);
  if (!v.pass) throw std::invalid_argument("EntireEvaluator: cell set fails validation");
  const std::size_t n = cells_->cells.size();
  const std::size_t padded = (n + kLeaf - 1) / kLeaf * kLeaf;
  aq_.reserve(n);
  inv_a2_re_.assign(padded, 0.0);
  inv_a2_im_.assign(padded, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = cells_->cells[i].marked_point;
    aq_.push_back(a);
    const cplx ia2 = 1.0 / (a * a);
    inv_a2_re_[i] = ia2.real();
    inv_a2_im_[i] = ia2.imag();
  }
}

VValue EntireEvaluator::eval_V(cplx z) const {
  const double sigma2 = cells_->sigma * cells_->sigma;
  const cplx z2 = z * z;
  const double z2r = z2.real(), z2i = z2.imag();
  const std::size_t n_leaves = inv_a2_re_.size() / kLeaf;

  // Per-leaf value: sum over the leaf of Re[log(1-u) + u] with u = z^2/a_Q^2.
  // The log part is a running product of |1-u|^2 in four independent lanes
  // (one log per leaf instead of one per cell); the lanes are renormalized
  // every kBlock terms so neither overflow nor underflow can occur. Leaves
  // are then reduced by the deterministic pairwise scheme: the value depends
  // only on the fixed generation order of the cells.
  static thread_local std::vector<double> leaf_vals;
  leaf_vals.assign(n_leaves, 0.0);

  double mn[4] = {1.0, 1.0, 1.0, 1.0};
  for (std::size_t leaf = 0; leaf < n_leaves; ++leaf) {
    const double* ar = inv_a2_re_.data() + leaf * kLeaf;
    const double* ai = inv_a2_im_.data() + leaf * kLeaf;
    double prod[4] = {1.0, 1.0, 1.0, 1.0};
    double re[4] = {0.0, 0.0, 0.0, 0.0};
    long exp_sum = 0;
    for (std::size_t b = 0; b < kLeaf; b += kBlock) {
      for (std::size_t k = 0; k < kBlock; k += 4) {
        for (std::size_t l = 0; l < 4; ++l) {
          const std::size_t i = b + k + l;
          const double ur = z2r * ar[i] - z2i * ai[i];
          const double ui = z2r * ai[i] + z2i * ar[i];
          const double wr = 1.0 - ur;
          const double nw = wr * wr + ui * ui;
          prod[l] *= nw;
          re[l] += ur;
          mn[l] = mn[l] < nw ? mn[l] : nw;
        }
      }
      // Block magnitudes are bounded by ~1e38, so products stay finite and
      // nonzero between these conditional renormalizations.
      for (double& p : prod) {
        if (p > 1e140 || p < 1e-140) {
          int e;
          p = std::frexp(p, &e);
          exp_sum += e;
        }
      }
    }
    for (double& p : prod) {  // bring every lane to [0.5, 1) before combining
      int e;
      p = std::frexp(p, &e);
      exp_sum += e;
    }
    leaf_vals[leaf] = 0.5 * (std::log(prod[0] * prod[1] * prod[2] * prod[3]) +
                             static_cast<double>(exp_sum) * 0.6931471805599453) +
                      ((re[0] + re[1]) + (re[2] + re[3]));
  }
  const double min_nw = std::min(std::min(mn[0], mn[1]), std::min(mn[2], mn[3]));

  if (min_nw < 1e-20) {
    // Possible lattice hit: resolve with the exact distance rule.
    for (const cplx& a : aq_)
      if (std::abs(z - a) < 1e-12 || std::abs(z + a) < 1e-12)
        throw singularity_error("eval_V: z coincides with a lattice point +-a_Q");
  }

  VValue out;
  out.value = sigma2 * pairwise_sum(leaf_vals);

  const double q = std::abs(z) / cells_->r_cut;
  if (q < 0.95) {
    // Each omitted term is bounded by |z|^4/(2(1-q^2)|a|^4); the cell sum over
    // |a| > r_cut is within the integral eps/r_cut^2 of |w|^-4 over the sector.
    out.tail_bound = cells_->eps * std::pow(std::abs(z), 4) /
                     (cells_->r_cut * cells_->r_cut * 2.0 * (1.0 - q * q));
  } else {
    out.tail_bound = std::numeric_limits<double>::infinity();
  }
  out.tail_dominates = out.tail_bound > 0.01 * std::abs(out.value);
  return out;
}

double EntireEvaluator::eval_logPhi_alpha(double alpha, cplx z) const {
  const cplx w = z * std::exp(cplx(0.0, -(alpha + kPi) / 2.0));
  try {
    return 0.5 * kappa_ * eval_V(w).value;
  } catch (const singularity_error&) {
    return -std::numeric_limits<double>::infinity();  // zero of Phi
  }
}

cplx EntireEvaluator::nearest_lattice_point(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  cplx arg = 0.0;
  for (const cplx& a : aq_) {
    if (double d = std::abs(z - a); d < best) {
      best = d;
      arg = a;
    }
    if (double d = std::abs(z + a); d < best) {
      best = d;
      arg = -a;
    }
  }
  return arg;
}

cplx eval_v_closed(cplx zeta) {
  if (zeta.imag() == 0.0 && std::abs(zeta.real()) >= 1.0)
    throw singularity_error("eval_v_closed: zeta on the branch cut |Re zeta| >= 1, Im zeta = 0");
  const cplx z2 = zeta * zeta;
  return 0.5 * (z2 - 1.0) * std::log(cplx(1.0, 0.0) - z2) - 0.5 * z2;
}

namespace {

cplx integrate_panel(double eps_lo, double eps_hi, cplx z) {
  // Adaptive order on a cut-free panel; the integrand is analytic there.
  cplx prev = 0.0;
  for (int order : {8, 16, 32, 64}) {
    const auto& gl = gauss_legendre(order);
    cplx acc = 0.0;
    const double mid = 0.5 * (eps_lo + eps_hi);
    const double half = 0.5 * (eps_hi - eps_lo);
    for (int i = 0; i < order; ++i) {
      const double th = mid + half * gl.nodes[i];
      acc += gl.weights[i] * eval_v_closed(z * std::exp(cplx(0.0, -th)));
    }
    acc *= half;
    if (order > 8 && std::abs(acc - prev) <= 1e-10 * (std::abs(acc) + 1e-300)) return acc;
    prev = acc;
  }
  return prev;  // order-64 result; relative 1e-10 is met for all smooth panels in range
}

}  // namespace

cplx eval_W(double eps, cplx z) {
  if (!(eps > 0.0 && eps < kPi / 2.0)) throw std::invalid_argument("eval_W: eps out of range");
  if (z == cplx(0.0, 0.0)) return 0.0;

  // Angles where z e^{-i theta} lands on the real axis (the cut when |z| >= 1).
  std::vector<double> knots = {-eps, eps};
  if (std::abs(z) >= 1.0) {
    if (std::abs(std::abs(z) - 1.0) < 1e-9) {
      const double phi = std::arg(z);
      for (int k = -2; k <= 2; ++k) {
        const double th = phi + k * kPi;
        if (th > -eps && th < eps)
          throw singularity_error("eval_W: path pinches the branch point zeta = +-1");
      }
    }
    const double phi = std::arg(z);
    for (int k = -2; k <= 2; ++k) {
      const double th = phi + k * kPi;
      if (th > -eps && th < eps) knots.push_back(th);
    }
  }
  std::sort(knots.begin(), knots.end());

  cplx total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (knots[i + 1] - knots[i] < 1e-300) continue;
    total += integrate_panel(knots[i], knots[i + 1], z);
  }
  return total;
}

double asymptotic_W(double eps, cplx z) {
  const double r = std::abs(z);
  if (r == 0.0) return 0.0;
  return 0.5 * r * r * std::log(r) * std::sin(2.0 * eps) * std::cos(2.0 * std::arg(z));
}

VWComparison compare_V_W(const EntireEvaluator& e, cplx z, bool near_lattice) {
  const double sigma = e.sigma();
  const cplx nearest = e.nearest_lattice_point(z);
  const double dist = std::abs(z - nearest);
  if (!near_lattice && dist <= sigma / 4.0)
    throw std::invalid_argument("compare_V_W: z inside a sigma/4 lattice disk; use the near-lattice variant");

  VValue V = e.eval_V(z);
  double v_adj = V.value;
  if (near_lattice) {
    // Remove the nearest singular factor sigma^2 log|1 -+ z/a_Q|.
    v_adj -= sigma * sigma * std::log(std::abs(cplx(1.0, 0.0) - z / nearest));
  }
  const cplx W = eval_W(e.cells().eps, z);

  VWComparison out;
  out.V = V.value;
  out.re_W = W.real();
  out.diff = v_adj - W.real();
  out.budget = e.cells().eps * std::norm(z) + std::abs(std::log(sigma)) / e.cells().eps +
               sigma * std::abs(z);
  out.ratio = std::abs(out.diff) / out.budget;
  out.tail_bound = V.tail_bound;
  out.near_lattice = near_lattice;
  return out;
}

}  // namespace zeromodes
