#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace frugal {

/// splitmix64 finalizer. Used to derive independent sub-generator seeds
/// (per tree, per run, per grid configuration) from a master seed by fixed
/// arithmetic, so serial and parallel execution orders agree.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
  return mix64(master ^ mix64(stream));
}

/// Deterministic random source. Wraps std::mt19937_64 (whose output
/// sequence is pinned by the standard) and implements bounded draws and
/// uniform doubles explicitly, since the standard distributions are
/// implementation-defined and would break bit-for-bit reproducibility.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  /// Unbiased draw from [0, n). n must be > 0.
  uint64_t bounded(uint64_t n) {
    const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    uint64_t x;
    do {
      x = next();
    } while (x < threshold);
    return x % n;
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace frugal
