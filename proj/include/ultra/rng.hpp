#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ultra {

/// Seeded 64-bit generator. The real-valued draws are derived from raw
/// mt19937_64 output by hand so that replays are bit-identical across
/// standard library implementations (std::uniform_real_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// exp2 of a uniform exponent: log-uniform over [2^lo, 2^hi).
  double log_uniform(double log2_lo, double log2_hi) {
    return std::exp2(uniform(log2_lo, log2_hi));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ultra
