#ifndef GFCLT_PERMLAB_HPP
#define GFCLT_PERMLAB_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace gfclt {

// One-line notation, entries a permutation of 1..n.
using Permutation = std::vector<int>;

bool is_valid_permutation(const Permutation& p);

// West's stack-sorting map: one left-to-right pass through a stack, popping
// while the top is smaller than the next input.  O(n).
Permutation stack_sort(const Permutation& p);

// The same map from its recursive characterization s(L n R) = s(L) s(R) n
// with n the maximum entry; kept as an independent implementation.
Permutation stack_sort_recursive(const Permutation& p);

// Number of positions i with p_i > p_{i+1}.
int descents(const Permutation& p);

enum class TableMode { exact, monte_carlo };

// Distribution table of the statistic des(s(pi)) + 1 over S_n.
struct DistTable {
  int n = 0;
  std::map<long long, long long> counts;
  long long total = 0;
  TableMode mode = TableMode::exact;
  std::optional<std::uint64_t> seed;

  double mean() const;
  double variance() const;
};

// Exhaustive table over all of S_n; n <= 10 (10! permutations).  n = 0 is
// the single empty permutation with statistic value 1.
DistTable exact_distribution(int n);

// Monte Carlo table from `samples` uniform permutations (Fisher-Yates on a
// seeded mt19937_64).  Sampling is split into fixed-size blocks with
// deterministically derived per-block streams, so the result depends only on
// (n, samples, seed) regardless of the worker count.  GFCLT_THREADS caps the
// number of workers.
DistTable mc_distribution(int n, long long samples, std::uint64_t seed);

struct IdentityReport {
  int n_max = 0;
  std::vector<double> max_abs_diff;  // index n-1 for n = 1..n_max
  std::vector<double> bound;         // 1e-9 * n!
  double worst_ratio = 0.0;          // max over n of diff/bound
  bool pass = false;
};

// Cross-checks the descent generating identity: the z^n coefficient of
// -log(1 + Fhat(y, z)) times n! against the exhaustive table over S_{n-1},
// for every n <= n_max (n_max <= 10).
IdentityReport verify_descent_identity(int n_max);

// Kolmogorov-Smirnov distance between the empirical CDF of the normalized
// statistic (V - mu n)/sqrt(n) and the N(0, sigma2) CDF, evaluated at the
// jump points.  Degenerate single-atom tables return 1.
double ks_to_normal(const DistTable& t, double mu, double sigma2);

double normal_cdf(double w, double sigma2);

}  // namespace gfclt

#endif  // GFCLT_PERMLAB_HPP
