#include "gfclt/coeffs.hpp"

#include <cmath>
#include <numbers>

#include "gfclt/errors.hpp"

namespace gfclt {

namespace {
constexpr cplx kI{0.0, 1.0};
}

PhiSequence phi_by_series(const Kernel& k, const std::vector<double>& x, int n_max) {
  if (n_max < 0) throw ConfigError("phi_by_series: n_max must be >= 0");
  std::optional<UniSeries> f = k.f_series(x, n_max);
  if (!f)
    throw ConfigError("phi_by_series: kernel does not expose a series form of g(x, .)");
  PhiSequence seq{x, {}, PhiMethod::series};
  seq.values.resize(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) seq.values[n] = f->at(n);
  return seq;
}

PhiSequence phi_by_quadrature(const Kernel& k, const std::vector<double>& x, int n_max,
                              double r, int m_nodes) {
  if (n_max < 0) throw ConfigError("phi_by_quadrature: n_max must be >= 0");
  if (r <= 0.0) r = 0.9;
  if (m_nodes <= 0) m_nodes = std::max(256, 4 * n_max);
  if (m_nodes < 4 * n_max)
    throw ConfigError("phi_by_quadrature: m_nodes must be at least 4*n_max");
  if (r >= k.z_radius())
    throw QuadratureDomainError("phi_by_quadrature: radius outside the analyticity disc");

  // One sweep of f = 1/g over the circle, then a discrete Fourier sum per n.
  std::vector<cplx> fvals(m_nodes);
  for (int j = 0; j < m_nodes; ++j) {
    double th = 2.0 * std::numbers::pi * j / m_nodes;
    cplx w = r * std::exp(kI * th);
    cplx g = k.eval(x, w);
    if (std::abs(g) < 1e-12)
      throw QuadratureDomainError("phi_by_quadrature: g vanished on the contour");
    fvals[j] = 1.0 / g;
  }
  PhiSequence seq{x, {}, PhiMethod::quadrature};
  seq.values.resize(static_cast<size_t>(n_max) + 1);
  double rn = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    cplx acc = 0.0;
    for (int j = 0; j < m_nodes; ++j) {
      double th = -2.0 * std::numbers::pi * j * n / m_nodes;
      acc += fvals[j] * std::exp(kI * th);
    }
    seq.values[n] = acc / (static_cast<double>(m_nodes) * rn);
    rn *= r;
  }
  return seq;
}

std::vector<cplx> cauchy_z_derivs(const Kernel& k, const std::vector<double>& x,
                                  int order, cplx z0, double rho, int nodes) {
  if (order < 0) throw ConfigError("cauchy_z_derivs: negative order");
  if (rho <= 0.0) {
    rho = std::min(k.z_radius() - 1.0, 0.5) / 2.0;
    if (rho <= 0.0) rho = 0.05;
  }
  if (std::abs(z0) + rho > k.z_radius() + 1e-12)
    throw DomainError("cauchy_z_derivs: circle leaves the analyticity disc");

  std::vector<cplx> gvals(nodes);
  for (int j = 0; j < nodes; ++j) {
    double th = 2.0 * std::numbers::pi * j / nodes;
    gvals[j] = k.eval(x, z0 + rho * std::exp(kI * th));
  }
  std::vector<cplx> derivs(static_cast<size_t>(order) + 1);
  double rk = 1.0, kfact = 1.0;
  for (int d = 0; d <= order; ++d) {
    cplx acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
      double th = -2.0 * std::numbers::pi * j * d / nodes;
      acc += gvals[j] * std::exp(kI * th);
    }
    derivs[d] = acc * kfact / (static_cast<double>(nodes) * rk);
    rk *= rho;
    kfact *= (d + 1);
  }
  return derivs;
}

cplx kernel_g_z(const Kernel& k, const std::vector<double>& x, cplx z) {
  if (k.deriv_mode() == DerivMode::analytic) return k.g_z(x, z);
  double margin = k.z_radius() - std::abs(z);
  double rho = std::max(std::min(0.125, margin / 2.0), 1e-3);
  return cauchy_z_derivs(k, x, 1, z, rho)[1];
}

}  // namespace gfclt
