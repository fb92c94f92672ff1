#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gfclt/errors.hpp"
#include "gfclt/permlab.hpp"

using gfclt::DistTable;
using gfclt::Permutation;

TEST_CASE("stack_sort: named examples") {
  CHECK(gfclt::stack_sort({2, 3, 1}) == Permutation{2, 1, 3});
  CHECK(gfclt::stack_sort({3, 2, 1}) == Permutation{1, 2, 3});
  CHECK(gfclt::stack_sort({1, 2, 3, 4}) == Permutation{1, 2, 3, 4});
  CHECK(gfclt::stack_sort({}) == Permutation{});
  CHECK(gfclt::stack_sort_recursive({2, 3, 1}) == Permutation{2, 1, 3});
  CHECK(gfclt::stack_sort_recursive({3, 2, 1}) == Permutation{1, 2, 3});
}

TEST_CASE("stack_sort: the two implementations agree on all of S_n, n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 1);
    do {
      CHECK(gfclt::stack_sort(p) == gfclt::stack_sort_recursive(p));
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST_CASE("stack_sort: n-1 passes sort every permutation (sanity)") {
  Permutation p{5, 1, 4, 2, 7, 3, 6};
  Permutation sorted(p.size());
  std::iota(sorted.begin(), sorted.end(), 1);
  Permutation q = p;
  for (size_t i = 0; i + 1 < p.size(); ++i) q = gfclt::stack_sort(q);
  CHECK(q == sorted);
}

TEST_CASE("descents: examples") {
  CHECK(gfclt::descents({1, 2, 3}) == 0);
  CHECK(gfclt::descents({3, 2, 1}) == 2);
  CHECK(gfclt::descents({2, 1, 3}) == 1);
  CHECK(gfclt::descents({1}) == 0);
}

TEST_CASE("is_valid_permutation") {
  CHECK(gfclt::is_valid_permutation({2, 1, 3}));
  CHECK(!gfclt::is_valid_permutation({2, 2, 3}));
  CHECK(!gfclt::is_valid_permutation({0, 1}));
}

TEST_CASE("exact_distribution: small tables") {
  auto t1 = gfclt::exact_distribution(1);
  CHECK(t1.counts == std::map<long long, long long>{{1, 1}});

  auto t2 = gfclt::exact_distribution(2);
  CHECK(t2.counts == std::map<long long, long long>{{1, 2}});

  auto t3 = gfclt::exact_distribution(3);
  CHECK(t3.counts == std::map<long long, long long>{{1, 5}, {2, 1}});

  auto t0 = gfclt::exact_distribution(0);
  CHECK(t0.counts == std::map<long long, long long>{{1, 1}});
}

TEST_CASE("exact_distribution: totals are n! and counts nonnegative") {
  long long fact = 1;
  for (int n = 1; n <= 7; ++n) {
    fact *= n;
    auto t = gfclt::exact_distribution(n);
    CHECK(t.total == fact);
    long long sum = 0;
    for (const auto& [v, c] : t.counts) {
      CHECK(c >= 0);
      sum += c;
    }
    CHECK(sum == fact);
  }
}

TEST_CASE("exact_distribution: refuses beyond the desk-scale bound") {
  CHECK_THROWS_AS(gfclt::exact_distribution(11), gfclt::ConfigError);
}

TEST_CASE("exact mean trend toward 3 - e") {
  // means are nondecreasing in n and mean/n approaches the drift constant
  double prev = 0.0;
  for (int n = 2; n <= 9; ++n) {
    auto t = gfclt::exact_distribution(n);
    double m = t.mean();
    CHECK(m >= prev - 1e-12);
    prev = m;
    if (n == 9) CHECK(std::abs(m / n - (3.0 - std::exp(1.0))) < 0.05);
  }
}

TEST_CASE("mc_distribution: determinism and agreement with exact frequencies") {
  auto a = gfclt::mc_distribution(3, 60000, 42);
  auto b = gfclt::mc_distribution(3, 60000, 42);
  CHECK(a.counts == b.counts);
  CHECK(a.total == 60000);

  // binomial 3-sigma band around p = 5/6 for the value 1
  double p = 5.0 / 6.0;
  double sd = std::sqrt(p * (1 - p) * 60000);
  CHECK(std::abs(static_cast<double>(a.counts.at(1)) - p * 60000) < 3.0 * sd);

  auto c = gfclt::mc_distribution(3, 60000, 43);
  CHECK(a.counts != c.counts);  // different stream
}

TEST_CASE("mc_distribution: sample mean per step near 3 - e at n = 2000") {
  auto t = gfclt::mc_distribution(2000, 20000, 7);
  CHECK(std::abs(t.mean() / 2000.0 - (3.0 - std::exp(1.0))) < 0.01);
  CHECK(t.total == 20000);
}

TEST_CASE("mc_distribution: input validation") {
  CHECK_THROWS_AS(gfclt::mc_distribution(3, 0, 1), gfclt::ConfigError);
  CHECK_THROWS_AS(gfclt::mc_distribution(0, 10, 1), gfclt::ConfigError);
}

TEST_CASE("verify_descent_identity: series equals enumeration up to n = 7") {
  auto rep = gfclt::verify_descent_identity(7);
  CHECK(rep.pass);
  for (size_t i = 0; i < rep.max_abs_diff.size(); ++i)
    CHECK(rep.max_abs_diff[i] < rep.bound[i]);
  // n = 1 pins the empty-permutation convention: the series row is exactly y
  CHECK(rep.max_abs_diff[0] < 1e-12);
}

TEST_CASE("ks_to_normal: degenerate and small-n behavior") {
  DistTable degenerate;
  degenerate.n = 5;
  degenerate.counts[3] = 10;
  degenerate.total = 10;
  CHECK(gfclt::ks_to_normal(degenerate, 0.28, 0.05) == 1.0);

  auto t3 = gfclt::exact_distribution(3);
  double e = std::exp(1.0);
  CHECK(gfclt::ks_to_normal(t3, 3.0 - e, 2.0 + 2.0 * e - e * e) > 0.2);

  CHECK_THROWS_AS(gfclt::ks_to_normal(t3, 0.0, 0.0), gfclt::ConfigError);
}

TEST_CASE("ks_to_normal: near zero for a table built from normal quantiles") {
  // synthesize a table whose jump points sit on the exact normal quantiles
  const double sigma2 = 2.0 + 2.0 * std::exp(1.0) - std::exp(2.0);
  const double mu = 3.0 - std::exp(1.0);
  const int n = 10000, atoms = 4000;
  DistTable t;
  t.n = n;
  t.total = atoms;
  for (int k = 0; k < atoms; ++k) {
    double u = (k + 0.5) / atoms;
    // invert the normal CDF by bisection
    double lo = -60.0, hi = 60.0;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      (gfclt::normal_cdf(mid, sigma2) < u ? lo : hi) = mid;
    }
    long long v = std::llround(mu * n + std::sqrt(static_cast<double>(n)) * lo);
    ++t.counts[v];
  }
  CHECK(gfclt::ks_to_normal(t, mu, sigma2) < 0.01);
}

TEST_CASE("ks_to_normal: decreasing trend over growing n (MC)") {
  const double e = std::exp(1.0);
  const double mu = 3.0 - e, sigma2 = 2.0 + 2.0 * e - e * e;
  double ks50 = gfclt::ks_to_normal(gfclt::mc_distribution(50, 20000, 5), mu, sigma2);
  double ks500 = gfclt::ks_to_normal(gfclt::mc_distribution(500, 20000, 5), mu, sigma2);
  CHECK(ks500 < ks50);
}
