#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace slab {

// Deterministic random source used by every randomized routine.
//
// Backed by std::mt19937_64 seeded directly with one 64-bit value. All
// derived draws (bounded integers, unit doubles, bernoulli trials, sampling
// without replacement) are implemented here on top of raw engine output, so
// the byte-level behaviour is identical across platforms and standard
// library vendors (std::*_distribution is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound). Rejection sampling, unbiased. bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t reject_above = max - (max % bound + 1) % bound;
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x <= reject_above) return x % bound;
    }
  }

  // Uniform double in [0, 1) with 53 random mantissa bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // One trial; always consumes exactly one engine draw.
  bool bernoulli(double p) { return next_unit() < p; }

  // k distinct values from [0, n), returned sorted. Partial Fisher-Yates.
  std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n,
                                                        std::uint64_t k);

 private:
  std::mt19937_64 engine_;
};

inline std::vector<std::uint64_t> Rng::sample_without_replacement(
    std::uint64_t n, std::uint64_t k) {
  if (k > n) k = n;
  std::vector<std::uint64_t> pool(n);
  for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
  for (std::uint64_t i = 0; i < k; ++i) {
    const std::uint64_t j = i + below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace slab
