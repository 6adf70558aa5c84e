#pragma once

#include <array>
#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "mehler/grid.hpp"

namespace mehler {

using Complex = std::complex<double>;

/// Angular frequency data of one half-spectrum entry of a real FFT on a Grid.
struct Frequency {
  std::array<double, 3> xi{0.0, 0.0, 0.0};  ///< ξ_a = π m_a / R_a
  std::array<int, 3> m{0, 0, 0};            ///< signed mode numbers
  std::array<bool, 3> nyquist{false, false, false};
  bool onNyquistShell() const { return nyquist[0] || nyquist[1] || nyquist[2]; }
};

/// Real-to-complex FFT (FFTW) on the node set of a Grid. The half spectrum
/// keeps the last axis at modes 0..n/2; the other axes use the standard
/// wrap-around order, with the Nyquist mode counted as -n/2.
class RealFft {
 public:
  explicit RealFft(const Grid& grid);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  const Grid& grid() const { return grid_; }
  std::size_t spectrumSize() const { return spectrumSize_; }

  std::vector<Complex> forward(std::span<const double> values) const;
  /// Inverse transform divided by the number of nodes, so that
  /// inverse(forward(v)) == v.
  std::vector<double> inverse(std::span<const Complex> spectrum) const;
  /// Unnormalised inverse: out_j = Σ_m X_m e^{2πi m·j/n}.
  std::vector<double> inverseRaw(std::span<const Complex> spectrum) const;

  Frequency frequency(std::size_t spectrumIndex) const;

 private:
  struct Plans;
  Grid grid_;
  std::size_t spectrumSize_ = 0;
  std::unique_ptr<Plans> plans_;
};

}  // namespace mehler
