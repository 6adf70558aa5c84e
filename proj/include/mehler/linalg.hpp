#pragma once

#include <Eigen/Dense>

namespace mehler {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// e^{tA} by scaling and squaring with a Padé approximant.
/// Throws InvalidArgument for non-square A or ‖tA‖₁ > 50.
Matrix matExp(const Matrix& a, double t);

/// Q_t = ∫₀ᵗ e^{σA} Q e^{σAᵀ} dσ by adaptive Gauss–Legendre quadrature
/// (relative tolerance 1e-10). The result is symmetrised.
Matrix gramCovariance(const Matrix& a, const Matrix& q, double t);

/// Symmetric positive square root of an SPD matrix.
Matrix spdSqrt(const Matrix& q);

/// Drift A, diffusion Q and stability index s of a generalized Mehler
/// semigroup on R^N. s = 1 is the Gaussian Ornstein–Uhlenbeck case; for
/// s < 1 the driving noise is 2s-stable. θ = 1/(2s) is the smoothing order.
class SemigroupSpec {
 public:
  SemigroupSpec(Matrix drift, Matrix diffusion, double s);

  /// Scalar convenience: A = [a], Q = [q].
  static SemigroupSpec scalar(double a, double q, double s) {
    return SemigroupSpec(Matrix::Constant(1, 1, a), Matrix::Constant(1, 1, q), s);
  }

  int dim() const { return static_cast<int>(drift_.rows()); }
  const Matrix& drift() const { return drift_; }
  const Matrix& diffusion() const { return diffusion_; }
  const Matrix& diffusionSqrt() const { return diffusionSqrt_; }
  double s() const { return s_; }
  double theta() const { return 0.5 / s_; }
  /// Index 2s of the stable law driving the process.
  double stableIndex() const { return 2.0 * s_; }
  bool driftFree() const { return drift_.isZero(0.0); }
  bool gaussian() const { return s_ == 1.0; }

 private:
  Matrix drift_;
  Matrix diffusion_;
  Matrix diffusionSqrt_;
  double s_;
};

}  // namespace mehler
