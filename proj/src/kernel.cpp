#include "gfclt/kernel.hpp"

#include <cmath>
#include <numbers>

#include "gfclt/errors.hpp"

namespace gfclt {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx ev(const TruncatedSeries2& s, cplx y0, cplx z) {
  // Horner in y per z-power, then Horner in z.
  cplx acc = 0.0;
  for (int n = s.trunc_order(); n >= 0; --n) {
    cplx row = 0.0;
    for (int m = s.y_order(); m >= 0; --m) row = row * y0 + s.at(m, n);
    acc = acc * z + row;
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// Kernel base

void Kernel::check_x(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw ConfigError("kernel: x has wrong dimension");
  for (double xi : x)
    if (!(std::abs(xi) <= x_box_ + 1e-9))
      throw DomainError("kernel: x outside validated box");
}

cplx Kernel::g_z(const std::vector<double>&, cplx) const {
  throw ConfigError("kernel: analytic g_z not available for this kernel");
}
std::vector<cplx> Kernel::grad_x(const std::vector<double>&, cplx) const {
  throw ConfigError("kernel: analytic x-partials not available for this kernel");
}
std::vector<std::vector<cplx>> Kernel::hess_x(const std::vector<double>&, cplx) const {
  throw ConfigError("kernel: analytic x-partials not available for this kernel");
}
std::vector<cplx> Kernel::grad_xz(const std::vector<double>&, cplx) const {
  throw ConfigError("kernel: analytic x-partials not available for this kernel");
}
std::optional<UniSeries> Kernel::f_series(const std::vector<double>&, int) const {
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// DiscreteDist

DiscreteDist DiscreteDist::from_scalars(std::vector<double> atoms,
                                        std::vector<double> probs) {
  DiscreteDist d;
  d.atoms.reserve(atoms.size());
  for (double a : atoms) d.atoms.push_back({a});
  d.probs = std::move(probs);
  d.validate();
  return d;
}

void DiscreteDist::validate() const {
  if (atoms.empty()) throw ConfigError("DiscreteDist: empty support");
  if (atoms.size() != probs.size())
    throw ConfigError("DiscreteDist: support/probs size mismatch");
  size_t d = atoms.front().size();
  if (d == 0) throw ConfigError("DiscreteDist: zero-dimensional atoms");
  double sum = 0.0;
  for (size_t k = 0; k < atoms.size(); ++k) {
    if (atoms[k].size() != d) throw ConfigError("DiscreteDist: ragged atom dimensions");
    for (double a : atoms[k])
      if (!std::isfinite(a)) throw ConfigError("DiscreteDist: non-finite atom");
    if (!(probs[k] >= 0.0) || !std::isfinite(probs[k]))
      throw ConfigError("DiscreteDist: invalid probability");
    sum += probs[k];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ConfigError("DiscreteDist: probabilities do not sum to 1");
}

std::vector<double> DiscreteDist::mean() const {
  std::vector<double> m(dim(), 0.0);
  for (size_t k = 0; k < atoms.size(); ++k)
    for (int j = 0; j < dim(); ++j) m[j] += probs[k] * atoms[k][j];
  return m;
}

std::vector<std::vector<double>> DiscreteDist::covariance() const {
  int d = dim();
  std::vector<double> m = mean();
  std::vector<std::vector<double>> c(d, std::vector<double>(d, 0.0));
  for (size_t k = 0; k < atoms.size(); ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        c[i][j] += probs[k] * (atoms[k][i] - m[i]) * (atoms[k][j] - m[j]);
  return c;
}

cplx DiscreteDist::char_fn(const std::vector<double>& x) const {
  cplx acc = 0.0;
  for (size_t k = 0; k < atoms.size(); ++k) {
    double dot = 0.0;
    for (size_t j = 0; j < x.size(); ++j) dot += atoms[k][j] * x[j];
    acc += probs[k] * std::exp(kI * dot);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// i.i.d. kernel: g(x, z) = 1 - phi(x) z

namespace {

class IidKernel : public Kernel {
 public:
  explicit IidKernel(DiscreteDist dist)
      : Kernel(dist.dim(), /*z_radius=*/2.0, /*x_box=*/1.0, DerivMode::analytic),
        dist_(std::move(dist)) {}

  cplx eval(const std::vector<double>& x, cplx z) const override {
    check_x(x);
    return 1.0 - dist_.char_fn(x) * z;
  }

  cplx g_z(const std::vector<double>& x, cplx) const override {
    check_x(x);
    return -dist_.char_fn(x);
  }

  std::vector<cplx> grad_x(const std::vector<double>& x, cplx z) const override {
    check_x(x);
    std::vector<cplx> g = phi_grad(x);
    for (cplx& v : g) v = -v * z;
    return g;
  }

  std::vector<std::vector<cplx>> hess_x(const std::vector<double>& x, cplx z) const override {
    check_x(x);
    int d = dim();
    std::vector<std::vector<cplx>> h(d, std::vector<cplx>(d, 0.0));
    for (size_t k = 0; k < dist_.atoms.size(); ++k) {
      cplx w = dist_.probs[k] * std::exp(kI * dot(dist_.atoms[k], x));
      // -phi_{x_j x_l} z = +a_j a_l w z
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l)
          h[j][l] += dist_.atoms[k][j] * dist_.atoms[k][l] * w * z;
    }
    return h;
  }

  std::vector<cplx> grad_xz(const std::vector<double>& x, cplx) const override {
    check_x(x);
    std::vector<cplx> g = phi_grad(x);
    for (cplx& v : g) v = -v;
    return g;
  }

  std::optional<UniSeries> f_series(const std::vector<double>& x, int n_max) const override {
    check_x(x);
    UniSeries s(n_max);
    cplx phi = dist_.char_fn(x), p = 1.0;
    for (int n = 0; n <= n_max; ++n) {
      s.ref(n) = p;
      p *= phi;
    }
    return s;
  }

 private:
  static double dot(const std::vector<double>& a, const std::vector<double>& x) {
    double acc = 0.0;
    for (size_t j = 0; j < x.size(); ++j) acc += a[j] * x[j];
    return acc;
  }

  std::vector<cplx> phi_grad(const std::vector<double>& x) const {
    std::vector<cplx> g(dim(), 0.0);
    for (size_t k = 0; k < dist_.atoms.size(); ++k) {
      cplx w = kI * dist_.probs[k] * std::exp(kI * dot(dist_.atoms[k], x));
      for (int j = 0; j < dim(); ++j) g[j] += dist_.atoms[k][j] * w;
    }
    return g;
  }

  DiscreteDist dist_;
};

}  // namespace

std::unique_ptr<Kernel> make_iid_kernel(DiscreteDist dist) {
  dist.validate();
  return std::make_unique<IidKernel>(std::move(dist));
}

// ---------------------------------------------------------------------------
// Kernels of the form g(x, z) = A(e^{ix}, z) / B(e^{ix}, z)

namespace {

class RationalSeriesKernel : public Kernel {
 public:
  RationalSeriesKernel(TruncatedSeries2 A, TruncatedSeries2 B, double z_radius,
                       double x_box)
      : Kernel(1, z_radius, x_box, DerivMode::analytic),
        A_(std::move(A)),
        B_(std::move(B)) {
    A_y_ = dy(A_);
    A_yy_ = dy(A_y_);
    A_z_ = dz(A_);
    A_yz_ = dy(A_z_);
    B_y_ = dy(B_);
    B_yy_ = dy(B_y_);
    B_z_ = dz(B_);
    B_yz_ = dy(B_z_);
  }

  cplx eval(const std::vector<double>& x, cplx z) const override {
    check_x(x);
    cplx y0 = std::exp(kI * x[0]);
    return quotient(y0, z).q;
  }

  cplx g_z(const std::vector<double>& x, cplx z) const override {
    check_x(x);
    return quotient(std::exp(kI * x[0]), z).q_z;
  }

  std::vector<cplx> grad_x(const std::vector<double>& x, cplx z) const override {
    check_x(x);
    cplx y0 = std::exp(kI * x[0]);
    return {kI * y0 * quotient(y0, z).q_y};
  }

  std::vector<std::vector<cplx>> hess_x(const std::vector<double>& x, cplx z) const override {
    check_x(x);
    cplx y0 = std::exp(kI * x[0]);
    Quotient qq = quotient(y0, z);
    // d^2/dx^2 q(e^{ix}) = -y q_y - y^2 q_yy
    return {{-y0 * qq.q_y - y0 * y0 * qq.q_yy}};
  }

  std::vector<cplx> grad_xz(const std::vector<double>& x, cplx z) const override {
    check_x(x);
    cplx y0 = std::exp(kI * x[0]);
    return {kI * y0 * quotient(y0, z).q_yz};
  }

  std::optional<UniSeries> f_series(const std::vector<double>& x, int n_max) const override {
    check_x(x);
    int cap = std::min(A_.trunc_order(), B_.trunc_order());
    if (n_max > cap)
      throw ConfigError("f_series: n_max exceeds the kernel truncation order");
    cplx y0 = std::exp(kI * x[0]);
    UniSeries f = uni_div(eval_y(B_, y0), eval_y(A_, y0));
    if (n_max == f.trunc_order()) return f;
    UniSeries out(n_max);
    for (int n = 0; n <= n_max; ++n) out.ref(n) = f.at(n);
    return out;
  }

 private:
  struct Quotient {
    cplx q, q_y, q_z, q_yy, q_yz;
  };

  Quotient quotient(cplx y0, cplx z) const {
    cplx B = ev(B_, y0, z);
    if (std::abs(B) < 1e-12)
      throw SingularKernelError("kernel denominator vanished at the requested point");
    cplx A = ev(A_, y0, z);
    cplx Ay = ev(A_y_, y0, z), Az = ev(A_z_, y0, z);
    cplx Ayy = ev(A_yy_, y0, z), Ayz = ev(A_yz_, y0, z);
    cplx By = ev(B_y_, y0, z), Bz = ev(B_z_, y0, z);
    cplx Byy = ev(B_yy_, y0, z), Byz = ev(B_yz_, y0, z);
    Quotient r;
    r.q = A / B;
    r.q_y = (Ay - r.q * By) / B;
    r.q_z = (Az - r.q * Bz) / B;
    r.q_yy = (Ayy - 2.0 * r.q_y * By - r.q * Byy) / B;
    r.q_yz = (Ayz - r.q_y * Bz - r.q_z * By - r.q * Byz) / B;
    return r;
  }

  TruncatedSeries2 A_, A_y_, A_yy_, A_z_, A_yz_;
  TruncatedSeries2 B_, B_y_, B_yy_, B_z_, B_yz_;
};

}  // namespace

TruncatedSeries2 defant_f_series(int trunc) {
  if (trunc < 2) throw ConfigError("defant_f_series: truncation too small");
  int N = trunc, M = trunc + 1;  // support bound keeps y-degree <= n+1
  TruncatedSeries2 radicand(M, N);
  radicand.ref(0, 0) = 1.0;
  radicand.ref(0, 1) = -4.0;
  radicand.ref(1, 1) = 2.0;
  radicand.ref(2, 2) = 1.0;
  TruncatedSeries2 s = ps_sqrt(radicand);
  s.ref(0, 0) -= 1.0;  // s - 1 - yz
  s.ref(1, 1) -= 1.0;
  return ps_mul(TruncatedSeries2::monomial(0.5, 1, 0, M, N), s);
}

TruncatedSeries2 defant_fhat_series(int trunc) { return borel_z(defant_f_series(trunc)); }

std::unique_ptr<Kernel> make_defant_kernel(int trunc) {
  if (trunc < 8) throw ConfigError("make_defant_kernel: trunc must be >= 8");
  TruncatedSeries2 fhat = defant_fhat_series(trunc);
  TruncatedSeries2 one = TruncatedSeries2::constant(1.0, fhat.y_order(), fhat.trunc_order());
  TruncatedSeries2 A = cplx{-1.0} * (one + fhat);
  TruncatedSeries2 B = dz(fhat);
  return std::make_unique<RationalSeriesKernel>(std::move(A), std::move(B),
                                                /*z_radius=*/1.25, /*x_box=*/0.75);
}

std::unique_ptr<Kernel> make_series_kernel(TruncatedSeries2 series, bool series_is_f,
                                           double z_radius, double x_box) {
  int M = series.y_order(), N = series.trunc_order();
  TruncatedSeries2 one = TruncatedSeries2::constant(1.0, M, N);
  if (series_is_f)  // g = 1/S
    return std::make_unique<RationalSeriesKernel>(std::move(one), std::move(series),
                                                  z_radius, x_box);
  return std::make_unique<RationalSeriesKernel>(std::move(series), std::move(one),
                                                z_radius, x_box);
}

// ---------------------------------------------------------------------------
// Self-check

KernelDiagnostics kernel_self_check(const Kernel& k, int grid_points, double tolerance) {
  KernelDiagnostics d{0.0, 0.0, 0.0, tolerance, false};
  std::vector<double> x0(k.dim(), 0.0);
  try {
    int rings = 4;
    int per_ring = std::max(grid_points / rings, 1);
    for (int i = 0; i < rings; ++i) {
      double r = (i + 1) / static_cast<double>(rings);
      for (int j = 0; j < per_ring; ++j) {
        double th = 2.0 * std::numbers::pi * j / per_ring;
        cplx z = r * std::exp(kI * th);
        d.max_eval_dev = std::max(d.max_eval_dev, std::abs(k.eval(x0, z) - (1.0 - z)));
      }
    }
    d.g01_dev = std::abs(k.eval(x0, 1.0));

    cplx gz;
    if (k.deriv_mode() == DerivMode::analytic) {
      gz = k.g_z(x0, 1.0);
    } else {
      // eval-only Cauchy derivative on a small circle about z = 1
      double rho = std::min(k.z_radius() - 1.0, 0.5) / 2.0;
      if (rho <= 0.0) rho = 0.05;
      int nodes = 64;
      cplx acc = 0.0;
      for (int j = 0; j < nodes; ++j) {
        double th = 2.0 * std::numbers::pi * j / nodes;
        acc += k.eval(x0, 1.0 + rho * std::exp(kI * th)) * std::exp(-kI * th);
      }
      gz = acc / (rho * static_cast<double>(nodes));
    }
    d.gz01_dev = std::abs(gz + 1.0);
  } catch (const std::exception&) {
    d.max_eval_dev = std::numeric_limits<double>::infinity();
  }
  d.passed = d.max_eval_dev < tolerance && d.g01_dev < tolerance && d.gz01_dev < tolerance;
  return d;
}

}  // namespace gfclt
