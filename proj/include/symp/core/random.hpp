#pragma once

#include <cstdint>
#include <random>

namespace symp::core {

/// Seeded 64-bit Mersenne Twister with a fixed bits-to-double map, so a seed
/// yields the same stream on every standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1p-53;
    return lo + (hi - lo) * u;
  }

  /// Uniform-ish integer in [0, n); modulo bias is irrelevant at these sizes.
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace symp::core
