#ifndef GFCLT_LIMITS_HPP
#define GFCLT_LIMITS_HPP

#include <vector>

#include "gfclt/kernel.hpp"

namespace gfclt {

// Per-step drift and covariance of the limiting Gaussian, with numerical
// diagnostics: imag_residue is the largest imaginary part discarded when
// realizing mu and sigma; psd_slack is the most negative eigenvalue of sigma
// before clamping (0 if none).
struct LimitParams {
  std::vector<double> mu;
  std::vector<std::vector<double>> sigma;
  double imag_residue = 0.0;
  double psd_slack = 0.0;
};

// Complex kernel partials at (x, z) = (0, 1).
struct KernelPartials {
  std::vector<cplx> gx;                // g_{x_j}
  std::vector<std::vector<cplx>> gxx;  // g_{x_j x_k}
  std::vector<cplx> gxz;               // g_{x_j z}
};

struct FdOptions {
  double h1 = -1.0;  // first-order step; default 1e-4 * max(1, x_box)
  double h2 = -1.0;  // second-order step; default 1e-2 * max(1, x_box)
};

// Partials at (0,1) from the kernel's analytic interface.
KernelPartials analytic_partials(const Kernel& k);

// Partials at (0,1) from central differences of eval with one Richardson
// level; z-derivatives always via Cauchy circles.  Works on any kernel.
KernelPartials finite_diff_partials(const Kernel& k, FdOptions opts = {});

// mu_j = Re[i g_{x_j}(0,1)],
// sigma_{jk} = Re[g_{x_j x_k}(0,1) - i(mu_j g_{x_k z}(0,1) + mu_k g_{x_j z}(0,1))
//              + mu_j mu_k], symmetrized and PSD-clamped.
LimitParams compute_limits(const Kernel& k);
LimitParams limits_from_partials(const KernelPartials& p);

// Eigenvalues of a small symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> symmetric_eigenvalues(const std::vector<std::vector<double>>& a);

}  // namespace gfclt

#endif  // GFCLT_LIMITS_HPP
