#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "gfclt/errors.hpp"
#include "gfclt/kernel.hpp"
#include "gfclt/limits.hpp"

using gfclt::cplx;
using gfclt::DiscreteDist;

namespace {

const cplx kI{0.0, 1.0};

DiscreteDist random_dist(std::mt19937& rng, int max_atoms = 6) {
  std::uniform_int_distribution<int> na(1, max_atoms);
  std::uniform_real_distribution<double> ua(-6.0, 6.0), up(0.05, 1.0);
  int n = na(rng);
  std::vector<double> atoms(n), probs(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    atoms[i] = ua(rng);
    probs[i] = up(rng);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  // renormalize exactly so validation's 1e-12 gate is met
  double s = 0.0;
  for (int i = 0; i + 1 < n; ++i) s += probs[i];
  probs[n - 1] = 1.0 - s;
  return DiscreteDist::from_scalars(atoms, probs);
}

}  // namespace

TEST_CASE("compute_limits: Bernoulli(1/2)") {
  auto k = gfclt::make_iid_kernel(DiscreteDist::from_scalars({0, 1}, {0.5, 0.5}));
  auto lp = gfclt::compute_limits(*k);
  CHECK(lp.mu[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(lp.sigma[0][0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(lp.imag_residue < 1e-12);
  CHECK(lp.psd_slack >= -1e-12);
}

TEST_CASE("compute_limits: point mass is deterministic drift") {
  auto k = gfclt::make_iid_kernel(DiscreteDist::from_scalars({3.5}, {1.0}));
  auto lp = gfclt::compute_limits(*k);
  CHECK(lp.mu[0] == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(std::abs(lp.sigma[0][0]) < 1e-10);
}

TEST_CASE("compute_limits: recovers mean and variance of random distributions") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    DiscreteDist d = random_dist(rng);
    auto k = gfclt::make_iid_kernel(d);
    auto lp = gfclt::compute_limits(*k);
    CHECK(std::abs(lp.mu[0] - d.mean()[0]) < 1e-9);
    CHECK(std::abs(lp.sigma[0][0] - d.covariance()[0][0]) < 1e-9);
    CHECK(lp.imag_residue < 1e-8);
  }
}

TEST_CASE("compute_limits: scale equivariance") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    DiscreteDist d = random_dist(rng, 4);
    DiscreteDist scaled = d;
    const double c = 3.0;
    for (auto& a : scaled.atoms) a[0] *= c;
    auto lp = gfclt::compute_limits(*gfclt::make_iid_kernel(d));
    auto lps = gfclt::compute_limits(*gfclt::make_iid_kernel(scaled));
    CHECK(std::abs(lps.mu[0] - c * lp.mu[0]) < 1e-9);
    CHECK(std::abs(lps.sigma[0][0] - c * c * lp.sigma[0][0]) < 1e-9);
  }
}

TEST_CASE("compute_limits: d = 2 kernel reproduces the covariance matrix") {
  DiscreteDist d;
  d.atoms = {{0.0, 1.0}, {1.0, 0.0}, {2.0, 2.0}};
  d.probs = {0.3, 0.45, 0.25};
  auto k = gfclt::make_iid_kernel(d);
  auto lp = gfclt::compute_limits(*k);
  auto mean = d.mean();
  auto cov = d.covariance();
  for (int j = 0; j < 2; ++j) {
    CHECK(std::abs(lp.mu[j] - mean[j]) < 1e-11);
    for (int l = 0; l < 2; ++l) CHECK(std::abs(lp.sigma[j][l] - cov[j][l]) < 1e-11);
  }
  CHECK(lp.sigma[0][1] == lp.sigma[1][0]);  // symmetric exactly
  CHECK(lp.psd_slack >= -1e-8);
}

TEST_CASE("compute_limits: stack-sorting kernel hits 3 - e and 2 + 2e - e^2") {
  const double e = std::exp(1.0);
  auto k = gfclt::make_defant_kernel(64);
  auto lp = gfclt::compute_limits(*k);
  CHECK(std::abs(lp.mu[0] - (3.0 - e)) < 1e-8);
  CHECK(std::abs(lp.sigma[0][0] - (2.0 + 2.0 * e - e * e)) < 1e-7);
  CHECK(lp.imag_residue < 1e-8);
  CHECK(lp.psd_slack >= -1e-8);
}

TEST_CASE("finite_diff_partials: closed form g = 1 - e^{ix} z") {
  gfclt::CallableKernel k(1, 2.0, 1.0, [](const std::vector<double>& x, cplx z) {
    return 1.0 - std::exp(kI * x[0]) * z;
  });
  auto p = gfclt::finite_diff_partials(k);
  // g_x(0,1) = -i e^{ix} z |_{(0,1)} = -i, g_xx(0,1) = 1, g_xz(0,1) = -i
  CHECK(std::abs(p.gx[0] - cplx{0.0, -1.0}) < 1e-9);
  CHECK(std::abs(p.gxx[0][0] - cplx{1.0, 0.0}) < 1e-8);
  CHECK(std::abs(p.gxz[0] - cplx{0.0, -1.0}) < 1e-9);
}

TEST_CASE("finite difference agrees with analytic partials (dual path)") {
  auto defant = gfclt::make_defant_kernel(32);
  auto pa = gfclt::analytic_partials(*defant);
  auto pf = gfclt::finite_diff_partials(*defant);
  CHECK(std::abs(pa.gx[0] - pf.gx[0]) < 1e-7);
  CHECK(std::abs(pa.gxx[0][0] - pf.gxx[0][0]) < 1e-7);
  CHECK(std::abs(pa.gxz[0] - pf.gxz[0]) < 1e-7);

  auto lp_a = gfclt::limits_from_partials(pa);
  auto lp_f = gfclt::limits_from_partials(pf);
  CHECK(std::abs(lp_a.mu[0] - lp_f.mu[0]) < 1e-7);
  CHECK(std::abs(lp_a.sigma[0][0] - lp_f.sigma[0][0]) < 1e-7);
}

TEST_CASE("compute_limits: black-box kernel goes through the FD path") {
  DiscreteDist d = DiscreteDist::from_scalars({0, 1}, {0.7, 0.3});
  auto exact = gfclt::make_iid_kernel(d);
  gfclt::CallableKernel blackbox(1, 2.0, 1.0,
                                 [&exact](const std::vector<double>& x, cplx z) {
                                   return exact->eval(x, z);
                                 });
  auto lp = gfclt::compute_limits(blackbox);
  CHECK(std::abs(lp.mu[0] - 0.3) < 1e-8);
  CHECK(std::abs(lp.sigma[0][0] - 0.21) < 1e-7);
}

TEST_CASE("finite_diff_partials: x_box too small for the stencil") {
  gfclt::CallableKernel k(1, 2.0, 1e-4, [](const std::vector<double>&, cplx z) {
    return 1.0 - z;
  });
  CHECK_THROWS_AS(gfclt::finite_diff_partials(k), gfclt::DomainError);
}

TEST_CASE("symmetric_eigenvalues: small matrices") {
  auto ev = gfclt::symmetric_eigenvalues({{2.0, 1.0}, {1.0, 2.0}});
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-12));
  auto ev3 = gfclt::symmetric_eigenvalues(
      {{2.0, 0.0, 0.0}, {0.0, 3.0, 4.0}, {0.0, 4.0, 9.0}});
  CHECK(ev3[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ev3[2] == doctest::Approx(11.0).epsilon(1e-10));
}
