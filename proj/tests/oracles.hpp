#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's trust or grouping code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Dist = std::vector<long double>;

// d_k = n_k w_k / sum(n w), in long double.
inline Dist weighted(const std::vector<double>& needs, const std::vector<double>& w) {
  long double total = 0;
  for (std::size_t k = 0; k < needs.size(); ++k) total += static_cast<long double>(needs[k]) * w[k];
  Dist d(needs.size());
  for (std::size_t k = 0; k < needs.size(); ++k) d[k] = static_cast<long double>(needs[k]) * w[k] / total;
  return d;
}

// Column sums first, then weighting.
inline Dist group_weighted(const std::vector<std::vector<double>>& rows, const std::vector<double>& w) {
  std::vector<double> sums(w.size(), 0.0);
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) sums[k] += r[k];
  }
  return weighted(sums, w);
}

// Term-by-term relative entropy with log base `base` (0 means natural).
inline long double kl(const Dist& p, const Dist& q, long double base = 0) {
  long double s = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    s += p[k] * std::log(p[k] / q[k]);
  }
  return base == 0 ? s : s / std::log(base);
}

inline Dist floor_to(const Dist& d, int decimals) {
  const long double scale = std::pow(10.0L, decimals);
  Dist out(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) out[k] = std::floor(d[k] * scale + 1e-9L) / scale;
  return out;
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Every subset of size m of {0..n-1} by bitmask; mirror halves collapse to
// the one holding element 0.
inline std::vector<std::uint32_t> half_masks(unsigned n, unsigned m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<unsigned>(__builtin_popcount(mask)) != m) continue;
    if ((mask & 1u) == 0) continue;
    out.push_back(mask);
  }
  return out;
}

// Seeded generator helpers for hand-rolled property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  std::vector<double> needs(std::size_t j, double lo = 0.0, double hi = 100.0) {
    std::vector<double> v(j);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }
  std::vector<double> weights(std::size_t j) {
    std::vector<double> v(j);
    for (auto& x : v) x = uniform(0.1, 10.0);
    return v;
  }
};

}  // namespace oracle
