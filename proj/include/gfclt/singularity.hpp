#ifndef GFCLT_SINGULARITY_HPP
#define GFCLT_SINGULARITY_HPP

#include <vector>

#include "gfclt/kernel.hpp"
#include "gfclt/limits.hpp"

namespace gfclt {

// Dominant root b(x) of g(x, .) near z = 1 and the residue amplitude a(x)
// of the principal part of 1/g at that pole.
struct Singularity {
  std::vector<double> x;
  cplx b;
  cplx a;
  int newton_iters = 0;
  double residual = 0.0;  // |g(x, b)|
};

// Follows the implicit-function branch from b(0) = 1 by continuation in x
// (steps of at most 0.05, warm-started damped Newton).  Throws TrackingError
// on non-convergence and DomainError if the root leaves |z| < z_radius.
Singularity track_root(const Kernel& k, const std::vector<double>& x);

// a * b^{-n}: the principal-part approximation of phi_{Y_n}(x).
cplx principal_part_phi(const Singularity& s, int n);

// Remainder of the second-order expansion of log b:
// R(x) = log b(x) + i<mu, x> - <x, sigma x>/2.
cplx log_b_remainder(const Kernel& k, const LimitParams& lp, const std::vector<double>& x);

struct TaylorFitReport {
  std::vector<std::vector<double>> xs;
  std::vector<double> remainders;  // |R(x)| per probe
  double fitted_order = 0.0;       // slope of log|R| vs log|x|
  int points_used = 0;
  bool pass = false;               // fitted_order > 1.8
};

// Fits the empirical order of the remainder over a sequence of probes
// (intended use: a halving sequence x0 / 2^k).
TaylorFitReport log_b_taylor(const Kernel& k, const LimitParams& lp,
                             const std::vector<std::vector<double>>& xs);

struct DecayFitReport {
  Singularity sing;
  std::vector<double> errors;  // e_n = |phi_n - a b^{-n}|, n = 0..n_max
  int fit_lo = 0, fit_hi = 0;
  int points_used = 0;
  double slope = 0.0;   // least-squares slope of log e_n vs n
  double r_fit = 1.0;   // exp(-slope)
  bool pure_pole = false;  // every tail e_n at rounding level
  bool pass = false;
};

// Verifies the exponential decay of the non-principal part: fits the slope
// of log e_n over [fit_lo, fit_hi] (defaults to the last two thirds),
// skipping entries at the rounding floor.  Requires exact coefficients, so
// the kernel must support phi_by_series.
DecayFitReport decay_rate_check(const Kernel& k, const std::vector<double>& x,
                                int n_max, int fit_lo = -1, int fit_hi = -1);

}  // namespace gfclt

#endif  // GFCLT_SINGULARITY_HPP
