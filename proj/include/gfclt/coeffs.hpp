#ifndef GFCLT_COEFFS_HPP
#define GFCLT_COEFFS_HPP

#include <vector>

#include "gfclt/kernel.hpp"
#include "gfclt/series.hpp"

namespace gfclt {

enum class PhiMethod { series, quadrature };

// Characteristic-function sequence phi_{Y_n}(x) for n = 0..n_max at a fixed
// frequency x.
struct PhiSequence {
  std::vector<double> x;
  std::vector<cplx> values;
  PhiMethod method;
};

// Exact recovery by truncated-series inversion of g(x, .).  Requires the
// kernel to expose a series form (built-ins do).
PhiSequence phi_by_series(const Kernel& k, const std::vector<double>& x, int n_max);

// Contour-integral recovery: trapezoidal rule on |w| = r applied to
// f(x, w)/w^{n+1}, all n recovered from a single node sweep.  r <= 0 selects
// the default radius 0.9 (callers that know the pole should pass 0.9|b|);
// m_nodes <= 0 selects max(256, 4 n_max).  Node summation order is fixed, so
// results are deterministic.
PhiSequence phi_by_quadrature(const Kernel& k, const std::vector<double>& x, int n_max,
                              double r = 0.0, int m_nodes = 0);

// z-derivatives of g(x, .) at z0 of orders 0..order, via the Cauchy integral
// formula on a circle of radius rho (rho <= 0 selects
// min(z_radius - 1, 0.5)/2 scaled to stay inside the domain).
std::vector<cplx> cauchy_z_derivs(const Kernel& k, const std::vector<double>& x,
                                  int order, cplx z0 = cplx{1.0, 0.0},
                                  double rho = 0.0, int nodes = 128);

// g_z at (x, z): analytic when the kernel provides it, else Cauchy.
cplx kernel_g_z(const Kernel& k, const std::vector<double>& x, cplx z);

}  // namespace gfclt

#endif  // GFCLT_COEFFS_HPP
