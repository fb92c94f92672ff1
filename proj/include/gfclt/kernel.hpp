#ifndef GFCLT_KERNEL_HPP
#define GFCLT_KERNEL_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "gfclt/series.hpp"

namespace gfclt {

enum class DerivMode { analytic, finite_difference };

// Discrete distribution of an R^d-valued step.  Atoms are d-vectors; the
// common scalar case is d = 1.
struct DiscreteDist {
  std::vector<std::vector<double>> atoms;
  std::vector<double> probs;

  static DiscreteDist from_scalars(std::vector<double> atoms, std::vector<double> probs);

  int dim() const { return atoms.empty() ? 0 : static_cast<int>(atoms.front().size()); }
  void validate() const;  // throws ConfigError on malformed input

  std::vector<double> mean() const;
  std::vector<std::vector<double>> covariance() const;
  cplx char_fn(const std::vector<double>& x) const;  // E exp(i<X, x>)
};

// A kernel is a function g(x, z), analytic in z on |z| <= z_radius and twice
// differentiable in x on |x_j| <= x_box, with 1/g generating the
// characteristic-function sequence.  Implementations are immutable after
// construction; eval and the partials are pure and reentrant.
class Kernel {
 public:
  virtual ~Kernel() = default;

  int dim() const { return dim_; }
  double z_radius() const { return z_radius_; }
  double x_box() const { return x_box_; }
  DerivMode deriv_mode() const { return deriv_mode_; }

  virtual cplx eval(const std::vector<double>& x, cplx z) const = 0;

  // Analytic partials; only available when deriv_mode() == analytic.
  // The defaults throw; black-box kernels are differenced by the callers.
  virtual cplx g_z(const std::vector<double>& x, cplx z) const;
  virtual std::vector<cplx> grad_x(const std::vector<double>& x, cplx z) const;
  virtual std::vector<std::vector<cplx>> hess_x(const std::vector<double>& x, cplx z) const;
  virtual std::vector<cplx> grad_xz(const std::vector<double>& x, cplx z) const;

  // Power series of f(x, .) = 1/g(x, .) about z = 0, when the kernel can
  // produce one exactly (the built-ins can).
  virtual std::optional<UniSeries> f_series(const std::vector<double>& x, int n_max) const;

 protected:
  Kernel(int dim, double z_radius, double x_box, DerivMode mode)
      : dim_(dim), z_radius_(z_radius), x_box_(x_box), deriv_mode_(mode) {}

  void check_x(const std::vector<double>& x) const;  // dim and box guard

 private:
  int dim_;
  double z_radius_;
  double x_box_;
  DerivMode deriv_mode_;
};

// g(x, z) = 1 - phi(x) z for the i.i.d. step distribution.
std::unique_ptr<Kernel> make_iid_kernel(DiscreteDist dist);

// Kernel of the stack-sorting descent statistic, built from the truncated
// series F(y,z) = (y/2)(-1 - yz + sqrt(1 - 4z + 2yz + y^2 z^2)) and its
// Borel transform.  x-partials use the chain rule d/dx = i y d/dy on the
// stored series.
std::unique_ptr<Kernel> make_defant_kernel(int trunc = 64);

// Kernel backed by a user-supplied coefficient table for g (series_is_f =
// false) or for f = 1/g (series_is_f = true), with y = e^{ix}.
std::unique_ptr<Kernel> make_series_kernel(TruncatedSeries2 series, bool series_is_f,
                                           double z_radius = 1.2, double x_box = 0.5);

// Black-box kernel defined by a callable; partials must be differenced.
class CallableKernel : public Kernel {
 public:
  using EvalFn = std::function<cplx(const std::vector<double>&, cplx)>;
  CallableKernel(int dim, double z_radius, double x_box, EvalFn fn)
      : Kernel(dim, z_radius, x_box, DerivMode::finite_difference), fn_(std::move(fn)) {}
  cplx eval(const std::vector<double>& x, cplx z) const override {
    check_x(x);
    return fn_(x, z);
  }

 private:
  EvalFn fn_;
};

// The exact and Borel-transformed descent series behind the Defant kernel.
TruncatedSeries2 defant_f_series(int trunc);
TruncatedSeries2 defant_fhat_series(int trunc);

struct KernelDiagnostics {
  double max_eval_dev;  // sup |g(0,z) - (1-z)| over the sample grid
  double g01_dev;       // |g(0,1)|
  double gz01_dev;      // |g_z(0,1) + 1|
  double tolerance;
  bool passed;
};

// Numerically verifies g(0,z) = 1-z on a grid over |z| <= 1 plus the point
// conditions g(0,1) = 0, g_z(0,1) = -1.  Reports, never throws.
KernelDiagnostics kernel_self_check(const Kernel& k, int grid_points = 32,
                                    double tolerance = 1e-8);

}  // namespace gfclt

#endif  // GFCLT_KERNEL_HPP
