#include "gfclt/series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

#include "gfclt/errors.hpp"

namespace gfclt {

namespace {

constexpr double kConstTermTol = 1e-13;

// Newton iterations needed so that an error in the ideal (y, z) vanishes on
// the whole stored rectangle: 2^k >= y_order + trunc_order + 1.
int newton_iters(int y_order, int trunc_order) {
  int target = y_order + trunc_order + 1;
  int k = 0;
  while ((1 << k) < target) ++k;
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// UniSeries

cplx UniSeries::horner(cplx z) const {
  cplx acc = 0.0;
  for (int n = trunc_order(); n >= 0; --n) acc = acc * z + c_[n];
  return acc;
}

UniSeries UniSeries::derivative() const {
  UniSeries r(std::max(trunc_order() - 1, 0));
  for (int n = 1; n <= trunc_order(); ++n) r.ref(n - 1) = static_cast<double>(n) * c_[n];
  if (trunc_order() == 0) r.ref(0) = 0.0;
  return r;
}

UniSeries uni_mul(const UniSeries& a, const UniSeries& b) {
  int N = std::min(a.trunc_order(), b.trunc_order());
  UniSeries r(N);
  for (int i = 0; i <= N; ++i) {
    if (a.at(i) == cplx{}) continue;
    for (int j = 0; i + j <= N; ++j) r.ref(i + j) += a.at(i) * b.at(j);
  }
  return r;
}

UniSeries uni_div(const UniSeries& a, const UniSeries& b) {
  if (std::abs(b.at(0)) == 0.0)
    throw NumericalError("uni_div: divisor has zero constant term");
  int N = std::min(a.trunc_order(), b.trunc_order());
  UniSeries q(N);
  for (int n = 0; n <= N; ++n) {
    cplx acc = a.at(n);
    for (int j = 1; j <= n; ++j) acc -= b.at(j) * q.at(n - j);
    q.ref(n) = acc / b.at(0);
  }
  return q;
}

// ---------------------------------------------------------------------------
// TruncatedSeries2

TruncatedSeries2::TruncatedSeries2(int y_order, int trunc_order)
    : m_max_(y_order),
      n_max_(trunc_order),
      c_(static_cast<size_t>(y_order + 1) * (trunc_order + 1)) {
  if (y_order < 0 || trunc_order < 0)
    throw ConfigError("TruncatedSeries2: negative truncation order");
}

TruncatedSeries2 TruncatedSeries2::constant(cplx c, int y_order, int trunc_order) {
  TruncatedSeries2 r(y_order, trunc_order);
  r.ref(0, 0) = c;
  return r;
}

TruncatedSeries2 TruncatedSeries2::monomial(cplx c, int m, int n, int y_order,
                                            int trunc_order) {
  TruncatedSeries2 r(y_order, trunc_order);
  if (m > y_order || n > trunc_order)
    throw ConfigError("TruncatedSeries2::monomial: exponent outside rectangle");
  r.ref(m, n) = c;
  return r;
}

TruncatedSeries2 TruncatedSeries2::truncated(int y_order, int trunc_order) const {
  TruncatedSeries2 r(std::min(y_order, m_max_), std::min(trunc_order, n_max_));
  for (int m = 0; m <= r.y_order(); ++m)
    for (int n = 0; n <= r.trunc_order(); ++n) r.ref(m, n) = at(m, n);
  return r;
}

double TruncatedSeries2::max_abs() const {
  double mx = 0.0;
  for (const cplx& v : c_) mx = std::max(mx, std::abs(v));
  return mx;
}

TruncatedSeries2 operator+(const TruncatedSeries2& a, const TruncatedSeries2& b) {
  TruncatedSeries2 r(std::min(a.y_order(), b.y_order()),
                     std::min(a.trunc_order(), b.trunc_order()));
  for (int m = 0; m <= r.y_order(); ++m)
    for (int n = 0; n <= r.trunc_order(); ++n) r.ref(m, n) = a.at(m, n) + b.at(m, n);
  return r;
}

TruncatedSeries2 operator-(const TruncatedSeries2& a, const TruncatedSeries2& b) {
  TruncatedSeries2 r(std::min(a.y_order(), b.y_order()),
                     std::min(a.trunc_order(), b.trunc_order()));
  for (int m = 0; m <= r.y_order(); ++m)
    for (int n = 0; n <= r.trunc_order(); ++n) r.ref(m, n) = a.at(m, n) - b.at(m, n);
  return r;
}

TruncatedSeries2 operator*(cplx s, const TruncatedSeries2& a) {
  TruncatedSeries2 r(a.y_order(), a.trunc_order());
  for (int m = 0; m <= r.y_order(); ++m)
    for (int n = 0; n <= r.trunc_order(); ++n) r.ref(m, n) = s * a.at(m, n);
  return r;
}

TruncatedSeries2 ps_mul(const TruncatedSeries2& a, const TruncatedSeries2& b) {
  int M = std::min(a.y_order(), b.y_order());
  int N = std::min(a.trunc_order(), b.trunc_order());
  TruncatedSeries2 r(M, N);
  for (int ma = 0; ma <= M; ++ma) {
    for (int na = 0; na <= N; ++na) {
      cplx av = a.at(ma, na);
      if (av == cplx{}) continue;
      for (int mb = 0; mb + ma <= M; ++mb) {
        cplx* dst = &r.c_[r.idx(ma + mb, na)];
        for (int nb = 0; nb + na <= N; ++nb) dst[nb] += av * b.at(mb, nb);
      }
    }
  }
  return r;
}

TruncatedSeries2 ps_reciprocal(const TruncatedSeries2& b) {
  cplx b00 = b.at(0, 0);
  if (std::abs(b00) == 0.0)
    throw NumericalError("ps_reciprocal: zero constant term");
  int M = b.y_order(), N = b.trunc_order();
  TruncatedSeries2 w = TruncatedSeries2::constant(1.0 / b00, M, N);
  TruncatedSeries2 two = TruncatedSeries2::constant(2.0, M, N);
  int iters = newton_iters(M, N);
  for (int k = 0; k < iters; ++k) w = ps_mul(w, two - ps_mul(b, w));
  return w;
}

TruncatedSeries2 ps_div(const TruncatedSeries2& a, const TruncatedSeries2& b) {
  if (std::abs(b.at(0, 0)) == 0.0)
    throw NumericalError("ps_div: divisor has zero constant term");
  int M = std::min(a.y_order(), b.y_order());
  int N = std::min(a.trunc_order(), b.trunc_order());
  return ps_mul(a.truncated(M, N), ps_reciprocal(b.truncated(M, N)));
}

TruncatedSeries2 ps_sqrt(const TruncatedSeries2& a) {
  if (std::abs(a.at(0, 0) - 1.0) > kConstTermTol)
    throw NumericalError("ps_sqrt: constant term must be 1 (principal branch)");
  int M = a.y_order(), N = a.trunc_order();
  // w -> w (3 - a w^2)/2 converges to a^{-1/2}; the square root is a*w.
  TruncatedSeries2 w = TruncatedSeries2::constant(1.0, M, N);
  TruncatedSeries2 three = TruncatedSeries2::constant(3.0, M, N);
  int iters = newton_iters(M, N);
  for (int k = 0; k < iters; ++k) {
    TruncatedSeries2 aw2 = ps_mul(a, ps_mul(w, w));
    w = 0.5 * ps_mul(w, three - aw2);
  }
  return ps_mul(a, w);
}

TruncatedSeries2 ps_log1p(const TruncatedSeries2& a) {
  if (std::abs(a.at(0, 0)) > kConstTermTol)
    throw NumericalError("ps_log1p: constant term must be 0");
  int M = a.y_order(), N = a.trunc_order();

  TruncatedSeries2 one_plus = a;
  one_plus.ref(0, 0) += 1.0;

  // z^0 slice: log(1 + a0(y)) as a 1-D Mercator sum in y (a0 nilpotent).
  std::vector<cplx> a0(M + 1), pw(M + 1), l0(M + 1);
  for (int m = 0; m <= M; ++m) a0[m] = a.at(m, 0);
  pw = a0;
  for (int j = 1; j <= M + 1; ++j) {
    double s = (j % 2 == 1) ? 1.0 / j : -1.0 / j;
    bool any = false;
    for (int m = 0; m <= M; ++m) {
      l0[m] += s * pw[m];
      any = any || pw[m] != cplx{};
    }
    if (!any) break;
    std::vector<cplx> nx(M + 1);
    for (int i = 1; i <= M; ++i) {
      if (pw[i] == cplx{}) continue;
      for (int m = 1; i + m <= M; ++m) nx[i + m] += pw[i] * a0[m];
    }
    pw = std::move(nx);
  }

  TruncatedSeries2 L(M, N);
  for (int m = 0; m <= M; ++m) L.ref(m, 0) = l0[m];
  if (N >= 1) {
    // d/dz log(1+a) = a_z / (1+a); integrate back in z.
    TruncatedSeries2 p = ps_mul(dz(a), ps_reciprocal(one_plus.truncated(M, N - 1)));
    for (int n = 1; n <= N; ++n)
      for (int m = 0; m <= M; ++m) L.ref(m, n) = p.at(m, n - 1) / static_cast<double>(n);
  }
  return L;
}

TruncatedSeries2 borel_z(const TruncatedSeries2& a) {
  TruncatedSeries2 r(a.y_order(), a.trunc_order());
  for (int n = 0; n <= a.trunc_order(); ++n) {
    double f = factorial(n);
    for (int m = 0; m <= a.y_order(); ++m) r.ref(m, n) = a.at(m, n) / f;
  }
  return r;
}

TruncatedSeries2 dz(const TruncatedSeries2& a) {
  TruncatedSeries2 r(a.y_order(), std::max(a.trunc_order() - 1, 0));
  if (a.trunc_order() == 0) return r;
  for (int m = 0; m <= r.y_order(); ++m)
    for (int n = 0; n <= r.trunc_order(); ++n)
      r.ref(m, n) = static_cast<double>(n + 1) * a.at(m, n + 1);
  return r;
}

TruncatedSeries2 dy(const TruncatedSeries2& a) {
  TruncatedSeries2 r(std::max(a.y_order() - 1, 0), a.trunc_order());
  if (a.y_order() == 0) return r;
  for (int m = 0; m <= r.y_order(); ++m)
    for (int n = 0; n <= r.trunc_order(); ++n)
      r.ref(m, n) = static_cast<double>(m + 1) * a.at(m + 1, n);
  return r;
}

UniSeries eval_y(const TruncatedSeries2& a, cplx y0) {
  UniSeries r(a.trunc_order());
  for (int n = 0; n <= a.trunc_order(); ++n) {
    cplx acc = 0.0;
    for (int m = a.y_order(); m >= 0; --m) acc = acc * y0 + a.at(m, n);
    r.ref(n) = acc;
  }
  return r;
}

double factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(171);
    t[0] = 1.0;
    for (int i = 1; i <= 170; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n > 170) throw ConfigError("factorial: argument out of range");
  return table[static_cast<size_t>(n)];
}

}  // namespace gfclt
