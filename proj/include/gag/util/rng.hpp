#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "gag/util/hash.hpp"

namespace gag {

// splitmix64 stream. Small, fast, and fully specified here so results do not
// depend on the standard library implementation. All engine draws must come
// from a stream derived via derive(); streams keyed by (seed, round, actor)
// make every parallel schedule produce identical graphs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }
  result_type operator()() { return next(); }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n == 0 returns 0.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    // Multiply-shift; bias is < 2^-64 * n, irrelevant at our scales.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Uniform in [0, 1).
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return real01() < p; }

  double normal() {
    // Box-Muller; one value per call keeps the stream layout simple.
    double u1 = real01();
    double u2 = real01();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // First k of a seeded Fisher-Yates pass; order of the sample is random.
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k) {
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t i = 0; i < n; ++i) all[i] = i;
    if (k > n) k = n;
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uint32_t j = i + static_cast<std::uint32_t>(below(n - i));
      std::swap(all[i], all[j]);
    }
    all.resize(k);
    return all;
  }

 private:
  std::uint64_t state_;
};

// Counter-based stream derivation: independent of evaluation order.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                      std::uint64_t c = 0) {
  std::uint64_t h = fnv1a_u64(seed);
  h = fnv1a_u64(a, h);
  h = fnv1a_u64(b, h);
  h = fnv1a_u64(c, h);
  return Rng(mix64(h));
}

}  // namespace gag
