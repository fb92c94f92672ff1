#include "gfclt/singularity.hpp"

#include <algorithm>
#include <cmath>

#include "gfclt/coeffs.hpp"
#include "gfclt/errors.hpp"

namespace gfclt {

namespace {

constexpr double kNewtonTol = 1e-13;
constexpr double kResidualBound = 1e-12;
constexpr int kMaxNewtonIters = 50;
constexpr double kContinuationStep = 0.05;
constexpr double kBranchJumpBound = 0.2;
constexpr double kNoiseFloor = 1e-14;

double inf_norm(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

// Damped Newton for g(x, .) = 0 from a warm start.
cplx newton_root(const Kernel& k, const std::vector<double>& x, cplx z0, int* iters) {
  cplx z = z0;
  double gv = std::abs(k.eval(x, z));
  for (int it = 0; it < kMaxNewtonIters; ++it) {
    if (gv < kNewtonTol) {
      *iters += it;
      return z;
    }
    cplx gz = kernel_g_z(k, x, z);
    if (std::abs(gz) == 0.0) throw TrackingError("track_root: derivative vanished");
    cplx step = -k.eval(x, z) / gz;
    // halve the step while it fails to decrease |g|
    for (int h = 0; h < 30; ++h) {
      cplx zn = z + step;
      if (std::abs(zn) > k.z_radius())
        throw DomainError("track_root: root escaped the analyticity disc");
      double gn = std::abs(k.eval(x, zn));
      if (gn < gv || h == 29) {
        z = zn;
        gv = gn;
        break;
      }
      step *= 0.5;
    }
  }
  if (gv < kNewtonTol) {
    *iters += kMaxNewtonIters;
    return z;
  }
  throw TrackingError("track_root: Newton did not converge in 50 iterations");
}

}  // namespace

Singularity track_root(const Kernel& k, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != k.dim())
    throw ConfigError("track_root: x has wrong dimension");
  if (inf_norm(x) > k.x_box() + 1e-12)
    throw DomainError("track_root: x outside the kernel's x box");

  Singularity s;
  s.x = x;
  int iters = 0;
  cplx b = 1.0;  // forced by g(0, z) = 1 - z

  double len = inf_norm(x);
  int steps = std::max(1, static_cast<int>(std::ceil(len / kContinuationStep)));
  std::vector<double> xt(x.size());
  int i = 1;
  while (i <= steps) {
    double t = static_cast<double>(i) / steps;
    for (size_t j = 0; j < x.size(); ++j) xt[j] = t * x[j];
    cplx bn = newton_root(k, xt, b, &iters);
    if (std::abs(bn - b) > kBranchJumpBound) {
      // jump too large to trust the branch; refine the continuation path
      if (steps > (1 << 16))
        throw TrackingError("track_root: branch could not be followed continuously");
      steps *= 2;
      i = 2 * i - 1;
      continue;
    }
    b = bn;
    ++i;
  }

  s.b = b;
  s.newton_iters = iters;
  s.residual = std::abs(k.eval(x, b));
  if (s.residual >= kResidualBound)
    throw TrackingError("track_root: residual above tolerance");
  // residue of 1/g at the simple pole z = b
  s.a = -1.0 / (b * kernel_g_z(k, x, b));
  return s;
}

cplx principal_part_phi(const Singularity& s, int n) {
  if (n < 0) throw ConfigError("principal_part_phi: n must be >= 0");
  return s.a * std::pow(s.b, -static_cast<double>(n));
}

cplx log_b_remainder(const Kernel& k, const LimitParams& lp, const std::vector<double>& x) {
  Singularity s = track_root(k, x);
  cplx r = std::log(s.b);
  for (size_t j = 0; j < x.size(); ++j) {
    r += cplx{0.0, lp.mu[j] * x[j]};
    for (size_t l = 0; l < x.size(); ++l) r -= 0.5 * x[j] * lp.sigma[j][l] * x[l];
  }
  return r;
}

TaylorFitReport log_b_taylor(const Kernel& k, const LimitParams& lp,
                             const std::vector<std::vector<double>>& xs) {
  TaylorFitReport rep;
  rep.xs = xs;
  rep.remainders.reserve(xs.size());
  std::vector<double> lx, lr;
  for (const auto& x : xs) {
    double nrm = 0.0;
    for (double v : x) nrm += v * v;
    nrm = std::sqrt(nrm);
    double r = std::abs(log_b_remainder(k, lp, x));
    rep.remainders.push_back(r);
    if (nrm > 0.0 && r > kNoiseFloor) {
      lx.push_back(std::log(nrm));
      lr.push_back(std::log(r));
    }
  }
  rep.points_used = static_cast<int>(lx.size());
  if (rep.points_used >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += lr[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * lr[i];
    }
    double n = static_cast<double>(lx.size());
    rep.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  rep.pass = rep.points_used >= 2 && rep.fitted_order > 1.8;
  return rep;
}

DecayFitReport decay_rate_check(const Kernel& k, const std::vector<double>& x,
                                int n_max, int fit_lo, int fit_hi) {
  DecayFitReport rep;
  rep.sing = track_root(k, x);
  PhiSequence phi = phi_by_series(k, x, n_max);
  rep.errors.resize(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n)
    rep.errors[n] = std::abs(phi.values[n] - principal_part_phi(rep.sing, n));

  rep.fit_lo = fit_lo >= 0 ? fit_lo : n_max / 3;
  rep.fit_hi = fit_hi >= 0 ? std::min(fit_hi, n_max) : n_max;

  // |phi_n| <= 1, so an absolute scale works: tail errors below the series
  // rounding level mean the pole accounts for everything we can resolve.
  double tail_max = 0.0;
  for (int n = rep.fit_lo; n <= rep.fit_hi; ++n)
    tail_max = std::max(tail_max, rep.errors[n]);
  if (tail_max <= 1e-11) {
    rep.pure_pole = true;
    rep.pass = true;
    return rep;
  }

  std::vector<double> ns, le;
  for (int n = rep.fit_lo; n <= rep.fit_hi; ++n) {
    if (rep.errors[n] > kNoiseFloor) {
      ns.push_back(static_cast<double>(n));
      le.push_back(std::log(rep.errors[n]));
    }
  }
  rep.points_used = static_cast<int>(ns.size());
  if (rep.points_used < 4) {
    rep.pass = false;  // decaying signal with too few resolvable points
    return rep;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < ns.size(); ++i) {
    sx += ns[i];
    sy += le[i];
    sxx += ns[i] * ns[i];
    sxy += ns[i] * le[i];
  }
  double n = static_cast<double>(ns.size());
  rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  rep.r_fit = std::exp(-rep.slope);
  rep.pass = rep.slope < 0.0 && rep.r_fit > 1.0;
  return rep;
}

}  // namespace gfclt
