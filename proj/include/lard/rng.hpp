#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lard {

/// Deterministic 64-bit generator (splitmix64). Used everywhere instead of
/// <random> engines/distributions so that output is byte-identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n). n must be > 0. Rejection sampling keeps the
  /// draw exactly uniform.
  uint64_t uniform(uint64_t n) {
    uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  /// Uniform real in [0, 1).
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Index drawn proportionally to non-negative weights with positive sum.
  size_t weighted(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double x = real() * total;
    for (size_t i = 0; i < weights.size(); ++i) {
      x -= weights[i];
      if (x < 0.0) return i;
    }
    return weights.size() - 1;
  }

  /// Fisher-Yates shuffle.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform(i));
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

/// Stable mix of a base seed with a stream id and ordinal; per-item seeds make
/// batch output independent of scheduling.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream, uint64_t ordinal) {
  Rng r(seed ^ (stream * 0x9e3779b97f4a7c15ULL) ^ (ordinal + 0x2545f4914f6cdd1dULL));
  r.next();
  return r.next();
}

}  // namespace lard
