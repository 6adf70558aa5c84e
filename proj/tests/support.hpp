#pragma once

#include <cstdint>
#include <random>

#include "mehler/linalg.hpp"

namespace testing {

/// Reproducible uniforms for property tests; independent of the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  mehler::Matrix matrix(int n, double scale) {
    mehler::Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = uniform(-scale, scale);
    return m;
  }
  mehler::Matrix spd(int n) {
    const mehler::Matrix b = matrix(n, 1.0);
    return b * b.transpose() + 0.5 * mehler::Matrix::Identity(n, n);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace testing
