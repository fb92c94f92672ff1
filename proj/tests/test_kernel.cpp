#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "gfclt/errors.hpp"
#include "gfclt/kernel.hpp"
#include "gfclt/kernel_io.hpp"

using gfclt::cplx;
using gfclt::DiscreteDist;
using gfclt::TruncatedSeries2;

namespace {
const cplx kI{0.0, 1.0};
}

TEST_CASE("iid kernel: Bernoulli(1/2) point values") {
  auto k = gfclt::make_iid_kernel(DiscreteDist::from_scalars({0, 1}, {0.5, 0.5}));
  CHECK(k->eval({0.0}, 0.5).real() == doctest::Approx(0.5).epsilon(1e-15));
  // g(x, z) = 1 - phi z with phi = (1 + e^{ix})/2
  cplx phi = 0.5 * (1.0 + std::exp(kI * 0.3));
  CHECK(std::abs(k->eval({0.3}, 0.7) - (1.0 - phi * 0.7)) < 1e-15);
  CHECK(std::abs(k->g_z({0.3}, 0.7) + phi) < 1e-15);
}

TEST_CASE("iid kernel: point mass at zero is 1 - z everywhere") {
  auto k = gfclt::make_iid_kernel(DiscreteDist::from_scalars({0}, {1.0}));
  for (double x : {-0.9, -0.2, 0.0, 0.4, 1.0})
    for (double zr : {0.0, 0.5, 1.0})
      CHECK(std::abs(k->eval({x}, zr) - (1.0 - zr)) < 1e-15);
}

TEST_CASE("iid kernel: empty support rejected") {
  DiscreteDist d;
  CHECK_THROWS_AS(gfclt::make_iid_kernel(d), gfclt::ConfigError);
}

TEST_CASE("DiscreteDist validation") {
  CHECK_THROWS_AS(DiscreteDist::from_scalars({1, 2}, {0.7, 0.7}), gfclt::ConfigError);
  CHECK_THROWS_AS(DiscreteDist::from_scalars({1, 2}, {1.5, -0.5}), gfclt::ConfigError);
  CHECK_THROWS_AS(DiscreteDist::from_scalars({1}, {0.5, 0.5}), gfclt::ConfigError);
  CHECK_NOTHROW(DiscreteDist::from_scalars({-1, 1}, {0.5, 0.5}));
}

TEST_CASE("defant series: support bound F_{m,n} = 0 for m > n+1") {
  TruncatedSeries2 f = gfclt::defant_f_series(16);
  for (int m = 0; m <= f.y_order(); ++m)
    for (int n = 0; n <= f.trunc_order(); ++n)
      if (m > n + 1) CHECK(std::abs(f.at(m, n)) <= 1e-14);
}

TEST_CASE("defant series: row identities at y = 1") {
  // F(1, z) = -z, so Fhat(1, z) = -z and Fhat_z(1, z) = -1.  Row sums are
  // compared relative to the row scale (the raw coefficients grow fast).
  TruncatedSeries2 f = gfclt::defant_f_series(24);
  for (int n = 0; n <= f.trunc_order(); ++n) {
    cplx row = 0.0;
    double scale = 1.0;
    for (int m = 0; m <= f.y_order(); ++m) {
      row += f.at(m, n);
      scale = std::max(scale, std::abs(f.at(m, n)));
    }
    cplx expect = n == 1 ? cplx{-1.0} : cplx{0.0};
    CHECK(std::abs(row - expect) < 1e-13 * scale);
  }

  TruncatedSeries2 fhat = gfclt::defant_fhat_series(24);
  auto fhat1 = eval_y(fhat, 1.0);
  for (int n = 0; n <= fhat1.trunc_order(); ++n) {
    cplx expect = n == 1 ? cplx{-1.0} : cplx{0.0};
    CHECK(std::abs(fhat1.at(n) - expect) < 1e-12);
  }
  auto fhatz1 = eval_y(dz(fhat), 1.0);
  for (int n = 0; n <= fhatz1.trunc_order(); ++n) {
    cplx expect = n == 0 ? cplx{-1.0} : cplx{0.0};
    CHECK(std::abs(fhatz1.at(n) - expect) < 1e-12);
  }
}

TEST_CASE("defant series: (1 + Fhat(1,z)) / Fhat_z(1,z) equals z - 1") {
  TruncatedSeries2 fhat = gfclt::defant_fhat_series(16);
  TruncatedSeries2 num =
      TruncatedSeries2::constant(1.0, fhat.y_order(), fhat.trunc_order()) + fhat;
  auto q = ps_div(num, dz(fhat));
  CHECK(std::abs(q.at(0, 0) + 1.0) < 1e-12);
  // q is a series in (y, z); at y = 1 it must collapse to z - 1
  auto q1 = eval_y(q, 1.0);
  CHECK(std::abs(q1.at(0) + 1.0) < 1e-12);
  CHECK(std::abs(q1.at(1) - 1.0) < 1e-12);
  for (int n = 2; n <= q1.trunc_order(); ++n) CHECK(std::abs(q1.at(n)) < 1e-10);
}

TEST_CASE("defant kernel: eval(0, z) = 1 - z on a grid") {
  auto k = gfclt::make_defant_kernel(32);
  for (int i = 0; i < 32; ++i) {
    double r = 0.25 * (1 + i % 4);
    double th = 2.0 * 3.141592653589793 * (i / 4) / 8.0;
    cplx z = r * std::exp(kI * th);
    CHECK(std::abs(k->eval({0.0}, z) - (1.0 - z)) < 1e-10);
  }
}

TEST_CASE("defant kernel: trunc below 8 rejected") {
  CHECK_THROWS_AS(gfclt::make_defant_kernel(4), gfclt::ConfigError);
}

TEST_CASE("kernel_self_check: built-ins pass, planted defect is reported") {
  auto iid = gfclt::make_iid_kernel(DiscreteDist::from_scalars({0, 1}, {0.5, 0.5}));
  auto d1 = gfclt::kernel_self_check(*iid);
  CHECK(d1.passed);
  CHECK(d1.max_eval_dev < 1e-12);
  CHECK(d1.g01_dev < 1e-12);
  CHECK(d1.gz01_dev < 1e-12);

  auto defant = gfclt::make_defant_kernel(64);
  auto d2 = gfclt::kernel_self_check(*defant);
  CHECK(d2.passed);
  CHECK(d2.max_eval_dev < 1e-10);
  CHECK(d2.g01_dev < 1e-10);
  CHECK(d2.gz01_dev < 1e-10);

  gfclt::CallableKernel corrupted(1, 2.0, 1.0, [](const std::vector<double>&, cplx z) {
    return 1.0 - z + 0.01 * z * z;
  });
  auto d3 = gfclt::kernel_self_check(corrupted);
  CHECK(!d3.passed);
  CHECK(d3.max_eval_dev == doctest::Approx(0.01).epsilon(0.05));
}

TEST_CASE("defant kernel: truncation stability between trunc and trunc+8") {
  auto coarse = gfclt::make_defant_kernel(32);
  auto fine = gfclt::make_defant_kernel(40);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), ur(0.0, 1.05), ut(0.0, 6.2831853);
  for (int i = 0; i < 16; ++i) {
    std::vector<double> x{ux(rng)};
    cplx z = ur(rng) * std::exp(kI * ut(rng));
    CHECK(std::abs(coarse->eval(x, z) - fine->eval(x, z)) < 1e-10);
  }
}

TEST_CASE("analytic x-partials match central differences at random points") {
  auto iid = gfclt::make_iid_kernel(DiscreteDist::from_scalars({0, 1, 3}, {0.5, 0.3, 0.2}));
  auto defant = gfclt::make_defant_kernel(32);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ux(-0.4, 0.4), uz(-0.9, 0.9);
  const double h = 1e-5;
  for (const gfclt::Kernel* k : {iid.get(), defant.get()}) {
    for (int i = 0; i < 8; ++i) {
      std::vector<double> x{ux(rng)};
      cplx z{uz(rng), uz(rng) * 0.3};
      cplx analytic = k->grad_x(x, z)[0];
      cplx fd = (k->eval({x[0] + h}, z) - k->eval({x[0] - h}, z)) / (2.0 * h);
      CHECK(std::abs(analytic - fd) < 1e-7);
    }
  }
}

TEST_CASE("defant kernel: singular evaluation error surfaces") {
  // Fhat_z(1, 1) = -1, but at y far from 1 the denominator series has zeros;
  // the planted case divides by a vanishing denominator via a series kernel.
  TruncatedSeries2 den(1, 1);  // g = 1/S with S = z: denominator vanishes at z=0
  den.ref(0, 1) = 1.0;
  auto k = gfclt::make_series_kernel(den, /*series_is_f=*/true);
  CHECK_THROWS_AS(k->eval({0.0}, 0.0), gfclt::SingularKernelError);
}

TEST_CASE("d = 2 iid kernel evaluates the joint characteristic function") {
  DiscreteDist d;
  d.atoms = {{0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}};
  d.probs = {0.25, 0.25, 0.5};
  auto k = gfclt::make_iid_kernel(d);
  CHECK(k->dim() == 2);
  std::vector<double> x{0.3, -0.2};
  cplx phi = 0.25 * std::exp(kI * (-0.2)) + 0.25 * std::exp(kI * 0.3) +
             0.5 * std::exp(kI * (0.3 - 0.2));
  CHECK(std::abs(k->eval(x, 0.8) - (1.0 - phi * 0.8)) < 1e-15);
}

TEST_CASE("kernel_from_spec: inline JSON forms") {
  auto iid = gfclt::kernel_from_spec(R"({"type":"iid","support":[0,1],"probs":[0.5,0.5]})");
  CHECK(iid->dim() == 1);
  CHECK(std::abs(iid->eval({0.0}, 0.5) - 0.5) < 1e-15);

  auto defant = gfclt::kernel_from_spec(R"({"type":"defant","trunc":16})");
  CHECK(std::abs(defant->eval({0.0}, 0.5) - 0.5) < 1e-10);

  // g = 1 - z as an explicit coefficient table
  auto series = gfclt::kernel_from_spec(
      R"({"type":"series","which":"g","coeffs":[[0,0,1,0],[0,1,-1,0]]})");
  CHECK(std::abs(series->eval({0.0}, 0.25) - 0.75) < 1e-15);

  CHECK_THROWS_AS(gfclt::kernel_from_spec(R"({"type":"nope"})"), gfclt::ConfigError);
  CHECK_THROWS_AS(gfclt::kernel_from_spec("{not json"), gfclt::ConfigError);
  CHECK_THROWS_AS(gfclt::kernel_from_spec("/no/such/file.json"), gfclt::ConfigError);
  CHECK_THROWS_AS(gfclt::kernel_from_spec(R"({"type":"iid","support":[0,1]})"),
                  gfclt::ConfigError);
}

TEST_CASE("series kernel: f-form reproduces the geometric series kernel") {
  // f = 1/(1-z) given as coefficients; the kernel is g = 1/f = 1 - z.  The
  // truncated table is only accurate well inside the unit disc.
  int N = 48;
  TruncatedSeries2 f(0, N);
  for (int n = 0; n <= N; ++n) f.ref(0, n) = 1.0;
  auto k = gfclt::make_series_kernel(f, /*series_is_f=*/true);
  for (double zr : {-0.4, -0.1, 0.25, 0.5})
    CHECK(std::abs(k->eval({0.0}, zr) - (1.0 - zr)) < 1e-12);
}

TEST_CASE("kernel domain guard") {
  auto k = gfclt::make_defant_kernel(16);
  CHECK_THROWS_AS(k->eval({2.0}, 0.5), gfclt::DomainError);
  CHECK_THROWS_AS(k->eval({0.1, 0.1}, 0.5), gfclt::ConfigError);
}
