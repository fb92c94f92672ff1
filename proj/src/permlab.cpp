#include "gfclt/permlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <thread>

#include "gfclt/errors.hpp"
#include "gfclt/kernel.hpp"
#include "gfclt/series.hpp"

namespace gfclt {

namespace {

constexpr int kExactLimit = 10;
constexpr long long kMcBlock = 16384;

// splitmix64; used only to derive per-block seeds.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform integer in [0, bound) by rejection; avoids the modulo bias and the
// implementation-defined std::uniform_int_distribution.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  std::uint64_t threshold = (0ULL - bound) % bound;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

int mc_worker_count(long long blocks) {
  unsigned hw = std::thread::hardware_concurrency();
  int threads = hw == 0 ? 1 : static_cast<int>(hw);
  if (const char* env = std::getenv("GFCLT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) threads = static_cast<int>(std::min<long>(v, 64));
  }
  return static_cast<int>(std::min<long long>(threads, blocks));
}

// Statistic value for a sampled permutation; scratch buffers reused.
int des_of_sorted_plus1(const std::vector<int>& p, std::vector<int>& stack,
                        std::vector<int>& out) {
  stack.clear();
  out.clear();
  for (int v : p) {
    while (!stack.empty() && stack.back() < v) {
      out.push_back(stack.back());
      stack.pop_back();
    }
    stack.push_back(v);
  }
  while (!stack.empty()) {
    out.push_back(stack.back());
    stack.pop_back();
  }
  int des = 0;
  for (size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i] > out[i + 1]) ++des;
  return des + 1;
}

}  // namespace

bool is_valid_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size() + 1, false);
  for (int v : p) {
    if (v < 1 || v > static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation stack_sort(const Permutation& p) {
  Permutation out, stack;
  out.reserve(p.size());
  stack.reserve(p.size());
  for (int v : p) {
    while (!stack.empty() && stack.back() < v) {
      out.push_back(stack.back());
      stack.pop_back();
    }
    stack.push_back(v);
  }
  while (!stack.empty()) {
    out.push_back(stack.back());
    stack.pop_back();
  }
  return out;
}

Permutation stack_sort_recursive(const Permutation& p) {
  Permutation out;
  out.reserve(p.size());
  // post-order walk of the max-pivot decomposition, explicit frames
  struct Frame {
    int lo, hi, pivot, stage;
  };
  std::vector<Frame> frames;
  frames.push_back({0, static_cast<int>(p.size()), -1, 0});
  while (!frames.empty()) {
    Frame& f = frames.back();
    if (f.lo >= f.hi) {
      frames.pop_back();
      continue;
    }
    if (f.stage == 0) {
      f.pivot = static_cast<int>(std::max_element(p.begin() + f.lo, p.begin() + f.hi) -
                                 p.begin());
      f.stage = 1;
      frames.push_back({f.lo, f.pivot, -1, 0});
    } else if (f.stage == 1) {
      f.stage = 2;
      frames.push_back({f.pivot + 1, f.hi, -1, 0});
    } else {
      out.push_back(p[f.pivot]);
      frames.pop_back();
    }
  }
  return out;
}

int descents(const Permutation& p) {
  int des = 0;
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i] > p[i + 1]) ++des;
  return des;
}

double DistTable::mean() const {
  if (total == 0) return 0.0;
  double acc = 0.0;
  for (const auto& [v, c] : counts) acc += static_cast<double>(v) * c;
  return acc / static_cast<double>(total);
}

double DistTable::variance() const {
  if (total == 0) return 0.0;
  double m = mean(), acc = 0.0;
  for (const auto& [v, c] : counts) acc += (v - m) * (v - m) * static_cast<double>(c);
  return acc / static_cast<double>(total);
}

DistTable exact_distribution(int n) {
  if (n < 0) throw ConfigError("exact_distribution: n must be >= 0");
  if (n > kExactLimit)
    throw ConfigError(
        "exact_distribution: n > 10 is not enumerable at desk scale; use "
        "mc_distribution instead");
  DistTable t;
  t.n = n;
  t.mode = TableMode::exact;
  if (n == 0) {
    t.counts[1] = 1;  // the empty permutation; des(s(())) + 1 = 1
    t.total = 1;
    return t;
  }
  Permutation p(n);
  std::iota(p.begin(), p.end(), 1);
  do {
    ++t.counts[descents(stack_sort_recursive(p)) + 1];
    ++t.total;
  } while (std::next_permutation(p.begin(), p.end()));
  return t;
}

DistTable mc_distribution(int n, long long samples, std::uint64_t seed) {
  if (n < 1) throw ConfigError("mc_distribution: n must be >= 1");
  if (samples < 1) throw ConfigError("mc_distribution: samples must be >= 1");

  long long blocks = (samples + kMcBlock - 1) / kMcBlock;
  std::vector<std::map<long long, long long>> block_counts(blocks);

  std::atomic<long long> next_block{0};
  auto worker = [&]() {
    std::vector<int> p(n), stack, out;
    stack.reserve(n);
    out.reserve(n);
    for (;;) {
      long long b = next_block.fetch_add(1);
      if (b >= blocks) return;
      long long count = std::min<long long>(kMcBlock, samples - b * kMcBlock);
      std::mt19937_64 rng(splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (b + 1))));
      auto& local = block_counts[b];
      for (long long s = 0; s < count; ++s) {
        std::iota(p.begin(), p.end(), 1);
        for (int i = n - 1; i > 0; --i) {
          int j = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(i) + 1));
          std::swap(p[i], p[j]);
        }
        ++local[des_of_sorted_plus1(p, stack, out)];
      }
    }
  };

  int workers = mc_worker_count(blocks);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  DistTable t;
  t.n = n;
  t.mode = TableMode::monte_carlo;
  t.seed = seed;
  t.total = samples;
  // commutative merge: the result is independent of worker scheduling
  for (const auto& local : block_counts)
    for (const auto& [v, c] : local) t.counts[v] += c;
  return t;
}

IdentityReport verify_descent_identity(int n_max) {
  if (n_max < 1 || n_max > kExactLimit)
    throw ConfigError("verify_descent_identity: n_max must be in [1, 10]");
  IdentityReport rep;
  rep.n_max = n_max;

  // series side: z^n coefficient rows of -log(1 + Fhat), scaled by n!
  TruncatedSeries2 fhat = defant_fhat_series(std::max(n_max, 2));
  TruncatedSeries2 series = cplx{-1.0} * ps_log1p(fhat);

  for (int n = 1; n <= n_max; ++n) {
    DistTable exact = exact_distribution(n - 1);
    double nf = factorial(n);
    double worst = 0.0;
    for (int m = 0; m <= series.y_order(); ++m) {
      cplx from_series = series.at(m, n) * nf;
      auto it = exact.counts.find(m);
      double from_exact = it == exact.counts.end() ? 0.0 : static_cast<double>(it->second);
      worst = std::max(worst, std::abs(from_series - from_exact));
    }
    rep.max_abs_diff.push_back(worst);
    rep.bound.push_back(1e-9 * nf);
    rep.worst_ratio = std::max(rep.worst_ratio, worst / (1e-9 * nf));
  }
  rep.pass = rep.worst_ratio < 1.0;
  return rep;
}

double normal_cdf(double w, double sigma2) {
  return 0.5 * std::erfc(-w / std::sqrt(2.0 * sigma2));
}

double ks_to_normal(const DistTable& t, double mu, double sigma2) {
  if (!(sigma2 > 0.0)) throw ConfigError("ks_to_normal: sigma2 must be positive");
  if (t.counts.size() <= 1 || t.total == 0) return 1.0;  // degenerate table
  double sqn = std::sqrt(static_cast<double>(t.n));
  double ks = 0.0, cum = 0.0;
  for (const auto& [v, c] : t.counts) {
    double w = (static_cast<double>(v) - mu * t.n) / sqn;
    double ref = normal_cdf(w, sigma2);
    ks = std::max(ks, std::abs(cum - ref));  // left limit at the jump
    cum += static_cast<double>(c) / static_cast<double>(t.total);
    ks = std::max(ks, std::abs(cum - ref));
  }
  return ks;
}

}  // namespace gfclt
