#pragma once

#include <cstdint>
#include <random>

namespace ctfrec::util {

// Deterministic random stream. Raw bits come from mt19937_64 (seeded
// explicitly); every distribution on top is implemented by hand because the
// standard library's distribution objects are implementation-defined and we
// need bit-identical runs on any toolchain.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [lo, hi], both inclusive. Rejection sampling, unbiased.
  int64_t uniform_int(int64_t lo, int64_t hi);

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double gaussian();
  double gaussian(double mean, double sigma) { return mean + sigma * gaussian(); }

  // Gamma(shape, scale) via Marsaglia-Tsang squeeze, boosted for shape < 1.
  double gamma(double shape, double scale);

  // Derives a substream seed from a base seed and a stream index. Used to give
  // each (game, agent, purpose) its own independent deterministic stream.
  static uint64_t mix(uint64_t a, uint64_t b);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ctfrec::util
