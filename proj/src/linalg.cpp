#include "mehler/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "mehler/errors.hpp"
#include "mehler/quadrature.hpp"

namespace mehler {

const GaussLegendreRule& gaussLegendre(int order) {
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(order); it != cache.end()) return it->second;

  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

Matrix matExp(const Matrix& a, double t) {
  if (a.rows() != a.cols()) throw InvalidArgument("matExp: matrix is not square");
  if (!std::isfinite(t)) throw InvalidArgument("matExp: t is not finite");
  const Matrix ta = t * a;
  const double norm1 = ta.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 > 50.0) {
    std::ostringstream msg;
    msg << "matExp: ||tA||_1 = " << norm1 << " exceeds the overflow guard 50";
    throw InvalidArgument(msg.str());
  }
  return ta.exp();
}

Matrix gramCovariance(const Matrix& a, const Matrix& q, double t) {
  if (!(t > 0.0)) throw InvalidArgument("gramCovariance: t must be positive");
  if (a.rows() != a.cols() || q.rows() != q.cols() || a.rows() != q.rows())
    throw InvalidArgument("gramCovariance: shape mismatch");
  auto integrand = [&](double sigma) -> Matrix {
    Matrix e = matExp(a, sigma);
    return e * q * e.transpose();
  };
  auto norm = [](const Matrix& m) { return m.cwiseAbs().maxCoeff(); };
  Matrix qt = integrateAdaptive<Matrix>(integrand, norm, 0.0, t, 1e-13);
  return 0.5 * (qt + qt.transpose());
}

Matrix spdSqrt(const Matrix& q) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q);
  return eig.operatorSqrt();
}

SemigroupSpec::SemigroupSpec(Matrix drift, Matrix diffusion, double s)
    : drift_(std::move(drift)), diffusion_(std::move(diffusion)), s_(s) {
  const auto n = drift_.rows();
  if (n < 1 || n > 3 || drift_.cols() != n)
    throw InvalidArgument("SemigroupSpec: drift must be square of dimension 1, 2 or 3");
  if (diffusion_.rows() != n || diffusion_.cols() != n)
    throw InvalidArgument("SemigroupSpec: diffusion shape differs from drift");
  if (!drift_.allFinite() || !diffusion_.allFinite())
    throw InvalidArgument("SemigroupSpec: non-finite matrix entry");
  if ((diffusion_ - diffusion_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidArgument("SemigroupSpec: diffusion is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(diffusion_);
  if (!(eig.eigenvalues().minCoeff() > 0.0))
    throw InvalidArgument("SemigroupSpec: diffusion is not positive definite");
  if (!(s_ > 0.0 && s_ <= 1.0))
    throw InvalidArgument("SemigroupSpec: stability index s must lie in (0, 1]");
  diffusionSqrt_ = eig.operatorSqrt();
}

}  // namespace mehler
