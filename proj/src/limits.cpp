#include "gfclt/limits.hpp"

#include <algorithm>
#include <cmath>

#include "gfclt/coeffs.hpp"
#include "gfclt/errors.hpp"

namespace gfclt {

namespace {

constexpr cplx kI{0.0, 1.0};

std::vector<double> unit_step(int d, int j, double h) {
  std::vector<double> x(d, 0.0);
  x[j] = h;
  return x;
}

// Cyclic Jacobi on a symmetric matrix; returns eigenvalues and accumulates
// the rotations in vecs (columns are eigenvectors).
std::vector<double> jacobi(std::vector<std::vector<double>> a,
                           std::vector<std::vector<double>>* vecs) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-32) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        double app = a[p][p], aqq = a[q][q], apq = a[p][q];
        a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
        a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
        a[p][q] = a[q][p] = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          double arp = a[r][p], arq = a[r][q];
          a[r][p] = a[p][r] = c * arp - s * arq;
          a[r][q] = a[q][r] = s * arp + c * arq;
        }
        for (int r = 0; r < n; ++r) {
          double vrp = v[r][p], vrq = v[r][q];
          v[r][p] = c * vrp - s * vrq;
          v[r][q] = s * vrp + c * vrq;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a[i][i];
  if (vecs) *vecs = std::move(v);
  return ev;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const std::vector<std::vector<double>>& a) {
  std::vector<double> ev = jacobi(a, nullptr);
  std::sort(ev.begin(), ev.end());
  return ev;
}

KernelPartials analytic_partials(const Kernel& k) {
  std::vector<double> x0(k.dim(), 0.0);
  KernelPartials p;
  p.gx = k.grad_x(x0, 1.0);
  p.gxx = k.hess_x(x0, 1.0);
  p.gxz = k.grad_xz(x0, 1.0);
  return p;
}

KernelPartials finite_diff_partials(const Kernel& k, FdOptions opts) {
  int d = k.dim();
  double scale = std::max(1.0, k.x_box());
  double h1 = opts.h1 > 0 ? opts.h1 : 1e-4 * scale;
  double h2 = opts.h2 > 0 ? opts.h2 : 1e-2 * scale;
  if (2.0 * std::max(h1, h2) > k.x_box())
    throw DomainError("finite_diff_partials: x_box too small for the stencil");

  auto at = [&](const std::vector<double>& x) { return k.eval(x, 1.0); };
  auto gz_at = [&](const std::vector<double>& x) {
    return cauchy_z_derivs(k, x, 1)[1];
  };

  // First partials: central difference with one Richardson level (h, h/2).
  auto d1 = [&](auto&& f, int j, double h) {
    auto step = [&](double hh) {
      return (f(unit_step(d, j, hh)) - f(unit_step(d, j, -hh))) / (2.0 * hh);
    };
    cplx dh = step(h), dh2 = step(h / 2.0);
    return (4.0 * dh2 - dh) / 3.0;
  };

  // Pure second partials: 3-point stencil, Richardson (h, h/2).  The step is
  // larger than h1 because the h^-2 roundoff amplification dominates here.
  auto d2 = [&](int j, double h) {
    cplx f0 = at(std::vector<double>(d, 0.0));
    auto step = [&](double hh) {
      return (at(unit_step(d, j, hh)) - 2.0 * f0 + at(unit_step(d, j, -hh))) / (hh * hh);
    };
    cplx dh = step(h), dh2 = step(h / 2.0);
    return (4.0 * dh2 - dh) / 3.0;
  };

  // Mixed second partials: 4-point cross stencil, Richardson (h, h/2).
  auto dmix = [&](int j, int l, double h) {
    auto step = [&](double hh) {
      auto pt = [&](double sj, double sl) {
        std::vector<double> x(d, 0.0);
        x[j] = sj * hh;
        x[l] = sl * hh;
        return at(x);
      };
      return (pt(1, 1) - pt(1, -1) - pt(-1, 1) + pt(-1, -1)) / (4.0 * hh * hh);
    };
    cplx dh = step(h), dh2 = step(h / 2.0);
    return (4.0 * dh2 - dh) / 3.0;
  };

  KernelPartials p;
  p.gx.resize(d);
  p.gxz.resize(d);
  p.gxx.assign(d, std::vector<cplx>(d, 0.0));
  for (int j = 0; j < d; ++j) {
    p.gx[j] = d1(at, j, h1);
    p.gxz[j] = d1(gz_at, j, h1);
    p.gxx[j][j] = d2(j, h2);
    for (int l = j + 1; l < d; ++l) p.gxx[j][l] = p.gxx[l][j] = dmix(j, l, h2);
  }
  return p;
}

LimitParams limits_from_partials(const KernelPartials& p) {
  int d = static_cast<int>(p.gx.size());
  LimitParams lp;
  lp.mu.resize(d);
  double imag_res = 0.0;
  for (int j = 0; j < d; ++j) {
    cplx muj = kI * p.gx[j];
    lp.mu[j] = muj.real();
    imag_res = std::max(imag_res, std::abs(muj.imag()));
  }
  lp.sigma.assign(d, std::vector<double>(d, 0.0));
  for (int j = 0; j < d; ++j) {
    for (int l = 0; l < d; ++l) {
      cplx s = p.gxx[j][l] - kI * (lp.mu[j] * p.gxz[l] + lp.mu[l] * p.gxz[j]) +
               lp.mu[j] * lp.mu[l];
      lp.sigma[j][l] = s.real();
      imag_res = std::max(imag_res, std::abs(s.imag()));
    }
  }
  lp.imag_residue = imag_res;
  for (int j = 0; j < d; ++j)
    for (int l = j + 1; l < d; ++l)
      lp.sigma[j][l] = lp.sigma[l][j] = 0.5 * (lp.sigma[j][l] + lp.sigma[l][j]);

  std::vector<std::vector<double>> v;
  std::vector<double> ev = jacobi(lp.sigma, &v);
  double min_ev = *std::min_element(ev.begin(), ev.end());
  lp.psd_slack = std::min(min_ev, 0.0);
  if (min_ev < 0.0) {
    // Clamp negative eigenvalues to zero and rebuild; exact-arithmetic sigma
    // is a limit of covariance matrices, so only rounding noise is removed.
    for (double& e : ev) e = std::max(e, 0.0);
    for (int j = 0; j < d; ++j)
      for (int l = j; l < d; ++l) {
        double acc = 0.0;
        for (int r = 0; r < d; ++r) acc += v[j][r] * ev[r] * v[l][r];
        lp.sigma[j][l] = lp.sigma[l][j] = acc;
      }
  }
  return lp;
}

LimitParams compute_limits(const Kernel& k) {
  KernelPartials p = k.deriv_mode() == DerivMode::analytic ? analytic_partials(k)
                                                           : finite_diff_partials(k);
  return limits_from_partials(p);
}

}  // namespace gfclt
