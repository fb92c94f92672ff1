#ifndef GFCLT_SERIES_HPP
#define GFCLT_SERIES_HPP

#include <complex>
#include <vector>

namespace gfclt {

using cplx = std::complex<double>;

// Univariate truncated power series in z.  Coefficients of z^n for
// n <= trunc_order are exact in the quotient ring mod z^{trunc+1}.
class UniSeries {
 public:
  UniSeries() : c_(1) {}
  explicit UniSeries(int trunc_order) : c_(static_cast<size_t>(trunc_order) + 1) {}

  int trunc_order() const { return static_cast<int>(c_.size()) - 1; }
  cplx at(int n) const {
    return (n >= 0 && n < static_cast<int>(c_.size())) ? c_[n] : cplx{};
  }
  cplx& ref(int n) { return c_[static_cast<size_t>(n)]; }
  const std::vector<cplx>& coeffs() const { return c_; }

  cplx horner(cplx z) const;       // value at z
  UniSeries derivative() const;    // formal d/dz, trunc decreases by 1

 private:
  std::vector<cplx> c_;
};

UniSeries uni_mul(const UniSeries& a, const UniSeries& b);
// q with q*b = a mod z^{trunc+1}; requires b(0) != 0.
UniSeries uni_div(const UniSeries& a, const UniSeries& b);

// Bivariate truncated power series sum_{m,n} c_{m,n} y^m z^n with
// 0 <= m <= y_order, 0 <= n <= trunc_order.  Entries outside the stored
// rectangle are structurally zero; all ring operations are exact modulo
// (y^{y_order+1}, z^{trunc_order+1}).
class TruncatedSeries2 {
 public:
  TruncatedSeries2() : m_max_(0), n_max_(0), c_(1) {}
  TruncatedSeries2(int y_order, int trunc_order);

  static TruncatedSeries2 constant(cplx c, int y_order, int trunc_order);
  static TruncatedSeries2 monomial(cplx c, int m, int n, int y_order, int trunc_order);

  int y_order() const { return m_max_; }
  int trunc_order() const { return n_max_; }

  cplx at(int m, int n) const {
    if (m < 0 || n < 0 || m > m_max_ || n > n_max_) return cplx{};
    return c_[idx(m, n)];
  }
  cplx& ref(int m, int n) { return c_[idx(m, n)]; }

  // Copy restricted to a (possibly smaller) rectangle.
  TruncatedSeries2 truncated(int y_order, int trunc_order) const;

  double max_abs() const;

 private:
  size_t idx(int m, int n) const {
    return static_cast<size_t>(m) * (n_max_ + 1) + static_cast<size_t>(n);
  }
  int m_max_, n_max_;
  std::vector<cplx> c_;

  friend TruncatedSeries2 ps_mul(const TruncatedSeries2&, const TruncatedSeries2&);
};

// Addition and scalar operations follow the same truncation contract as
// ps_mul: results take the min of each order.
TruncatedSeries2 operator+(const TruncatedSeries2& a, const TruncatedSeries2& b);
TruncatedSeries2 operator-(const TruncatedSeries2& a, const TruncatedSeries2& b);
TruncatedSeries2 operator*(cplx s, const TruncatedSeries2& a);

// Cauchy product, exact up to truncation.
TruncatedSeries2 ps_mul(const TruncatedSeries2& a, const TruncatedSeries2& b);

// Multiplicative inverse by Newton iteration (w <- w(2 - b w)); requires a
// nonzero constant term.
TruncatedSeries2 ps_reciprocal(const TruncatedSeries2& b);

// q with ps_mul(q, b) = a up to truncation; requires b constant term != 0.
TruncatedSeries2 ps_div(const TruncatedSeries2& a, const TruncatedSeries2& b);

// Principal square root (constant term +1) by Newton iteration on the
// inverse square root; requires constant term 1.
TruncatedSeries2 ps_sqrt(const TruncatedSeries2& a);

// log(1 + a) for a with zero constant term; equals the truncated Mercator
// series.  The z>=1 part is obtained from a Newton reciprocal and termwise
// integration of a_z/(1+a); the z^0 slice is the 1-D log in y.
TruncatedSeries2 ps_log1p(const TruncatedSeries2& a);

// Coefficient (m,n) divided by n!.
TruncatedSeries2 borel_z(const TruncatedSeries2& a);

// Formal partial derivatives.  dz lowers trunc_order by one, dy lowers
// y_order by one (floored at zero).
TruncatedSeries2 dz(const TruncatedSeries2& a);
TruncatedSeries2 dy(const TruncatedSeries2& a);

// Substitute y = y0 (Horner in y), leaving a series in z.
UniSeries eval_y(const TruncatedSeries2& a, cplx y0);

double factorial(int n);

}  // namespace gfclt

#endif  // GFCLT_SERIES_HPP
