#include "mehler/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace mehler {

namespace {
// FFTW's planner is not re-entrant.
std::mutex& plannerMutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RealFft::Plans {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Plans() {
    std::lock_guard lock(plannerMutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (real) fftw_free(real);
    if (spec) fftw_free(spec);
  }
};

RealFft::RealFft(const Grid& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  const int rank = grid_.dim();
  int n[3];
  for (int a = 0; a < rank; ++a) n[a] = grid_.points(a);
  spectrumSize_ = grid_.size() / n[rank - 1] * (n[rank - 1] / 2 + 1);

  std::lock_guard lock(plannerMutex());
  plans_->real = fftw_alloc_real(grid_.size());
  plans_->spec = fftw_alloc_complex(spectrumSize_);
  if (!plans_->real || !plans_->spec) throw std::bad_alloc();
  plans_->forward =
      fftw_plan_dft_r2c(rank, n, plans_->real, plans_->spec, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
  plans_->backward =
      fftw_plan_dft_c2r(rank, n, plans_->spec, plans_->real, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
  if (!plans_->forward || !plans_->backward) throw std::runtime_error("FFTW planning failed");
}

RealFft::~RealFft() = default;

std::vector<Complex> RealFft::forward(std::span<const double> values) const {
  std::memcpy(plans_->real, values.data(), grid_.size() * sizeof(double));
  fftw_execute(plans_->forward);
  std::vector<Complex> out(spectrumSize_);
  std::memcpy(static_cast<void*>(out.data()), plans_->spec, spectrumSize_ * sizeof(fftw_complex));
  return out;
}

std::vector<double> RealFft::inverseRaw(std::span<const Complex> spectrum) const {
  std::memcpy(plans_->spec, spectrum.data(), spectrumSize_ * sizeof(fftw_complex));
  fftw_execute(plans_->backward);
  return std::vector<double>(plans_->real, plans_->real + grid_.size());
}

std::vector<double> RealFft::inverse(std::span<const Complex> spectrum) const {
  auto out = inverseRaw(spectrum);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (double& v : out) v *= scale;
  return out;
}

Frequency RealFft::frequency(std::size_t index) const {
  Frequency f;
  const int rank = grid_.dim();
  const int last = grid_.points(rank - 1);
  const int halfLast = last / 2 + 1;
  int mLast = static_cast<int>(index % halfLast);
  index /= halfLast;
  f.m[rank - 1] = mLast;
  f.nyquist[rank - 1] = (mLast == last / 2);
  for (int a = rank - 2; a >= 0; --a) {
    const int n = grid_.points(a);
    int m = static_cast<int>(index % n);
    index /= n;
    if (m >= n / 2) m -= n;
    f.m[a] = m;
    f.nyquist[a] = (m == -n / 2);
  }
  for (int a = 0; a < rank; ++a) f.xi[a] = std::numbers::pi * f.m[a] / grid_.halfWidth(a);
  return f;
}

}  // namespace mehler
