#include "mehler/measures.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "mehler/errors.hpp"
#include "mehler/fft.hpp"
#include "mehler/quadrature.hpp"

namespace mehler {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSeriesTerms = 3;

double norm3(const std::array<double, 3>& v, int dim) {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) s += v[a] * v[a];
  return std::sqrt(s);
}

/// Unit directions with quadrature weights covering the sphere S^{dim-1}.
struct SphereRule {
  std::vector<std::array<double, 3>> directions;
  std::vector<double> weights;  // surface measure
};

SphereRule sphereRule(int dim) {
  SphereRule rule;
  if (dim == 1) {
    rule.directions = {{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
    rule.weights = {1.0, 1.0};
  } else if (dim == 2) {
    const int m = 256;
    for (int k = 0; k < m; ++k) {
      double phi = 2.0 * kPi * k / m;
      rule.directions.push_back({std::cos(phi), std::sin(phi), 0.0});
      rule.weights.push_back(2.0 * kPi / m);
    }
  } else {
    const auto& gl = gaussLegendre(24);
    const int m = 48;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      double z = gl.nodes[i];
      double r = std::sqrt(1.0 - z * z);
      for (int k = 0; k < m; ++k) {
        double phi = 2.0 * kPi * k / m;
        rule.directions.push_back({r * std::cos(phi), r * std::sin(phi), z});
        rule.weights.push_back(gl.weights[i] * 2.0 * kPi / m);
      }
    }
  }
  return rule;
}

/// ∫_{S^{N-1}} |θ_1|^α dσ(θ).
double sphereMomentConstant(int dim, double alpha) {
  using std::tgamma;
  return 2.0 * std::pow(kPi, 0.5 * (dim - 1)) * tgamma(0.5 * (alpha + 1.0)) /
         tgamma(0.5 * (dim + alpha));
}

/// lim r^α P(‖Y‖ > r) = C_α Γ(S) for a symmetric α-stable vector.
double stableTailConstant(double alpha) {
  return 2.0 * std::tgamma(alpha) * std::sin(0.5 * kPi * alpha) / kPi;
}

/// Coefficient b_k of |y|^{-αk-1} in π·g(y) for the standard symmetric stable
/// density (ψ = |ξ|^α).
double seriesCoefficient(int k, double alpha) {
  double sign = (k % 2 == 1) ? 1.0 : -1.0;
  return sign * std::tgamma(alpha * k + 1.0) / std::tgamma(k + 1.0) *
         std::sin(0.5 * k * kPi * alpha);
}

}  // namespace

double symbolExponent(const SemigroupSpec& spec, double t, std::span<const double> xi) {
  if (!(t > 0.0)) throw InvalidArgument("symbolExponent: t must be positive");
  if (static_cast<int>(xi.size()) != spec.dim())
    throw InvalidArgument("symbolExponent: frequency dimension mismatch");
  Vector x = Eigen::Map<const Vector>(xi.data(), spec.dim());
  if (x.isZero(0.0)) return 0.0;
  const Matrix at = spec.drift().transpose();
  auto integrand = [&](double sigma) {
    Vector v = spec.diffusionSqrt() * (matExp(at, sigma) * x);
    return std::pow(v.squaredNorm(), spec.s());
  };
  return 0.5 * integrateAdaptive(integrand, 0.0, t, 1e-12);
}

SymbolEvaluator::SymbolEvaluator(const SemigroupSpec& spec, double t)
    : dim_(spec.dim()), t_(t), s_(spec.s()), qSqrt_(spec.diffusionSqrt()) {
  if (!(t > 0.0)) throw InvalidArgument("SymbolEvaluator: t must be positive");
  if (spec.driftFree()) {
    mode_ = Mode::DriftFree;
    return;
  }
  if (dim_ == 1) {
    // ½ q^s ∫₀ᵗ e^{2saσ} dσ, times |ξ|^{2s}
    mode_ = Mode::Scalar;
    const double rate = 2.0 * s_ * spec.drift()(0, 0);
    unit_ = 0.5 * std::pow(spec.diffusion()(0, 0), s_) * std::expm1(rate * t) / rate;
    return;
  }
  const Matrix at = spec.drift().transpose();
  const double norm1 = (t * at).cwiseAbs().colwise().sum().maxCoeff();
  const int panels = std::max(2, static_cast<int>(std::ceil(norm1 / 0.25)));
  const auto& gl = gaussLegendre(16);
  const double width = t / panels;
  for (int p = 0; p < panels; ++p) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      double sigma = width * (p + 0.5 * (gl.nodes[i] + 1.0));
      factors_.push_back(qSqrt_ * matExp(at, sigma));
      weights_.push_back(0.25 * width * gl.weights[i]);
    }
  }
  if (s_ == 1.0) {
    mode_ = Mode::Quadratic;
    quadratic_ = Matrix::Zero(dim_, dim_);
    for (std::size_t i = 0; i < factors_.size(); ++i)
      quadratic_ += weights_[i] * factors_[i].transpose() * factors_[i];
  } else {
    mode_ = Mode::Quadrature;
  }
}

double SymbolEvaluator::operator()(std::span<const double> xi) const {
  std::array<double, 3> v{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) v[a] = xi[a];
  return (*this)(v);
}

double SymbolEvaluator::operator()(const std::array<double, 3>& xi) const {
  Eigen::Map<const Vector> x(xi.data(), dim_);
  switch (mode_) {
    case Mode::DriftFree:
      return 0.5 * t_ * std::pow((qSqrt_ * x).squaredNorm(), s_);
    case Mode::Scalar:
      return unit_ * std::pow(x(0) * x(0), s_);
    case Mode::Quadratic:
      return x.dot(quadratic_ * x);
    case Mode::Quadrature: {
      double acc = 0.0;
      for (std::size_t i = 0; i < factors_.size(); ++i)
        acc += weights_[i] * std::pow((factors_[i] * x).squaredNorm(), s_);
      return acc;
    }
  }
  return 0.0;
}

double SymbolEvaluator::minOnUnitSphere() const {
  auto rule = sphereRule(dim_);
  double m = INFINITY;
  for (const auto& d : rule.directions) m = std::min(m, (*this)(d));
  return m;
}

double SymbolEvaluator::spectralMass() const {
  auto rule = sphereRule(dim_);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.directions.size(); ++i)
    acc += rule.weights[i] * (*this)(rule.directions[i]);
  return acc / sphereMomentConstant(dim_, 2.0 * s_);
}

// ---- TailModel ---------------------------------------------------------

TailModel TailModel::forMeasure(const SemigroupSpec& spec, double t) {
  TailModel m;
  m.dim = spec.dim();
  m.index = spec.stableIndex();
  if (spec.gaussian()) {
    m.kind = Kind::Gaussian;
    m.covariance = gramCovariance(spec.drift(), spec.diffusion(), t);
  } else {
    m.kind = Kind::Stable;
    SymbolEvaluator psi(spec, t);
    m.spectralMass = psi.spectralMass();
    if (m.dim == 1) m.scale1d = std::pow(psi({1.0, 0.0, 0.0}), 1.0 / m.index);
  }
  return m;
}

double TailModel::massOutsideBall(double r) const {
  if (kind == Kind::Gaussian) {
    double sigma2 = Eigen::SelfAdjointEigenSolver<Matrix>(covariance).eigenvalues().maxCoeff();
    return boost::math::gamma_q(0.5 * dim, r * r / (2.0 * sigma2));
  }
  if (dim == 1) {
    double acc = 0.0;
    for (int k = 1; k <= kSeriesTerms; ++k)
      acc += seriesCoefficient(k, index) * std::pow(scale1d / r, index * k) / (index * k);
    return std::min(1.0, std::max(0.0, 2.0 / kPi * acc));
  }
  return std::min(1.0, stableTailConstant(index) * spectralMass * std::pow(r, -index));
}

double TailModel::massOutsideBox(const Grid& grid) const {
  if (kind == Kind::Gaussian) {
    double acc = 0.0;
    for (int a = 0; a < dim; ++a)
      acc += std::erfc(grid.halfWidth(a) / std::sqrt(2.0 * covariance(a, a)));
    return std::min(1.0, acc);
  }
  return massOutsideBall(grid.minHalfWidth());
}

double TailModel::momentOutsideBall(double r, double gamma) const {
  if (kind == Kind::Gaussian) {
    double sigma2 = Eigen::SelfAdjointEigenSolver<Matrix>(covariance).eigenvalues().maxCoeff();
    double a = 0.5 * (dim + gamma);
    return std::pow(2.0 * sigma2, 0.5 * gamma) * boost::math::tgamma(a) *
           boost::math::gamma_q(a, r * r / (2.0 * sigma2)) / std::tgamma(0.5 * dim);
  }
  if (gamma >= index) return INFINITY;
  if (dim == 1) {
    double acc = 0.0;
    for (int k = 1; k <= kSeriesTerms; ++k)
      acc += seriesCoefficient(k, index) * std::pow(scale1d, index * k) *
             std::pow(r, gamma - index * k) / (index * k - gamma);
    return 2.0 / kPi * acc;
  }
  return stableTailConstant(index) * spectralMass * index * std::pow(r, gamma - index) /
         (index - gamma);
}

double TailModel::asymptoticDensity1d(double y) const {
  const double ay = std::abs(y);
  double acc = 0.0;
  for (int k = 1; k <= kSeriesTerms; ++k)
    acc += seriesCoefficient(k, index) * std::pow(scale1d / ay, index * k) / ay;
  return acc / kPi;
}

double TailModel::radiusForMass(double mass) const {
  if (kind == Kind::Gaussian) {
    double sigma2 = Eigen::SelfAdjointEigenSolver<Matrix>(covariance).eigenvalues().maxCoeff();
    return std::sqrt(2.0 * sigma2 * boost::math::gamma_q_inv(0.5 * dim, mass));
  }
  double k = stableTailConstant(index) * spectralMass;
  return std::pow(k / mass, 1.0 / index);
}

// ---- densities -----------------------------------------------------------

namespace {

/// e^{-ψ_t(ξ_m)}·(-1)^{Σm} on the half spectrum, optionally times iξ_axis.
/// Returns the largest symbol magnitude on the Nyquist shell.
double fillDensitySpectrum(const RealFft& fft, const SymbolEvaluator& psi, int derivativeAxis,
                           std::vector<Complex>& spectrum) {
  spectrum.assign(fft.spectrumSize(), Complex(0.0, 0.0));
  double nyquist = 0.0;
  const int dim = fft.grid().dim();
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    Frequency f = fft.frequency(i);
    double phi = std::exp(-psi(f.xi));
    if (f.onNyquistShell()) nyquist = std::max(nyquist, phi);
    int msum = 0;
    for (int a = 0; a < dim; ++a) msum += f.m[a];
    double signed_phi = (msum % 2 == 0) ? phi : -phi;
    if (derivativeAxis < 0) {
      spectrum[i] = signed_phi;
    } else if (!f.nyquist[derivativeAxis]) {
      spectrum[i] = Complex(0.0, f.xi[derivativeAxis] * signed_phi);
    }
  }
  return nyquist;
}

void checkAlias(double nyquist, double threshold, double t) {
  if (nyquist > threshold) {
    std::ostringstream msg;
    msg << "e^{-psi_t} = " << nyquist << " on the Nyquist shell at t = " << t
        << " exceeds " << threshold << "; refine the grid spacing";
    throw AliasRisk(msg.str());
  }
}

void checkTailBudget(double tailMass, const DensityOptions& options, const Grid& grid) {
  if (tailMass > options.tailBudget) {
    std::ostringstream msg;
    msg << "estimated mass " << tailMass << " outside the box of half-width "
        << grid.minHalfWidth() << " exceeds the tail budget " << options.tailBudget;
    throw TailTruncation(msg.str());
  }
}

/// Σ_{j≠0} g(y + 2Rj) from the tail series, with an integral remainder.
double periodisationError1d(const TailModel& tail, double y, double period) {
  constexpr int kTerms = 16;
  double acc = 0.0;
  for (int j = 1; j <= kTerms; ++j) {
    acc += tail.asymptoticDensity1d(period * j + y);
    acc += tail.asymptoticDensity1d(period * j - y);
  }
  const double start = period * (kTerms + 0.5);
  for (int k = 1; k <= kSeriesTerms; ++k) {
    double p = tail.index * k;
    double coef = seriesCoefficient(k, tail.index) * std::pow(tail.scale1d, p) / kPi;
    acc += coef * (std::pow(start + y, -p) + std::pow(start - y, -p)) / (period * p);
  }
  return acc;
}

}  // namespace

double DensityTable::valueAtOrigin() const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = 0; a < grid.dim(); ++a) idx[a] = grid.points(a) / 2;
  return values[grid.flatten(idx)];
}

DensityTable densityOf(const SemigroupSpec& spec, double t, const Grid& grid,
                       const DensityOptions& options) {
  if (!(t > 0.0)) throw InvalidArgument("densityOf: t must be positive");
  if (grid.dim() != spec.dim()) throw InvalidArgument("densityOf: grid dimension mismatch");

  SymbolEvaluator psi(spec, t);
  RealFft fft(grid);
  std::vector<Complex> spectrum;
  DensityTable table{grid, {}, 0.0, 0.0, 0.0, 0.0, 0.0, TailModel::forMeasure(spec, t)};
  table.nyquistSymbol = fillDensitySpectrum(fft, psi, -1, spectrum);
  checkAlias(table.nyquistSymbol, options.aliasThreshold, t);

  table.values = fft.inverseRaw(spectrum);
  double scale = 1.0;
  for (int a = 0; a < grid.dim(); ++a) scale /= 2.0 * grid.halfWidth(a);
  for (double& v : table.values) v *= scale;

  const double cell = grid.cellVolume();
  table.tailMass = table.tail.massOutsideBox(grid);
  checkTailBudget(table.tailMass, options, grid);

  double boxSum = 0.0;
  if (table.tail.kind == TailModel::Kind::Stable && grid.dim() == 1) {
    const double period = 2.0 * grid.halfWidth(0);
    for (int j = 0; j < grid.points(0); ++j)
      table.values[j] -= periodisationError1d(table.tail, grid.coordinate(0, j), period);
    for (double v : table.values) boxSum += v;
    table.mass = boxSum * cell;
  } else {
    for (double v : table.values) boxSum += v;
    table.mass = boxSum * cell - table.tailMass;
  }

  const double unaccounted = std::abs(table.mass + table.tailMass - 1.0);
  if (unaccounted > options.massTolerance) {
    std::ostringstream msg;
    msg << "box mass " << table.mass << " plus tail estimate " << table.tailMass
        << " misses unit mass by " << unaccounted << " (tolerance " << options.massTolerance
        << "); enlarge halfWidth";
    throw TailTruncation(msg.str());
  }

  double symmetry = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto idx = grid.unflatten(i);
    for (int a = 0; a < grid.dim(); ++a) idx[a] = (grid.points(a) - idx[a]) % grid.points(a);
    symmetry = std::max(symmetry, std::abs(table.values[i] - table.values[grid.flatten(idx)]));
  }
  table.symmetryResidual = symmetry;

  table.minValue = INFINITY;
  for (double& v : table.values) {
    table.minValue = std::min(table.minValue, v);
    if (v < 0.0) v = 0.0;
  }
  return table;
}

Grid densityGrid(const SemigroupSpec& spec, double t, int points, double decay) {
  SymbolEvaluator psi(spec, t);
  const double radius = std::pow(decay / psi.minOnUnitSphere(), 1.0 / spec.stableIndex());
  const double h = kPi / radius;
  return Grid::cube(spec.dim(), 0.5 * points * h, points);
}

MomentEstimate absoluteMoment(const DensityTable& density, double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("absoluteMoment: gamma must be positive");
  const Grid& grid = density.grid;
  const double r = grid.minHalfWidth();
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto x = grid.node(i);
    double norm = norm3(x, grid.dim());
    if (norm <= r) acc += std::pow(norm, gamma) * density.values[i];
  }
  MomentEstimate m;
  m.value = acc * grid.cellVolume();
  m.divergent = density.tail.kind == TailModel::Kind::Stable && gamma >= density.tail.index;
  if (!m.divergent) {
    m.tailContribution = density.tail.momentOutsideBall(r, gamma);
    m.value += m.tailContribution;
  }
  return m;
}

double fominL1Norm(const SemigroupSpec& spec, double t, int axis, const Grid& grid,
                   const DensityOptions& options) {
  if (!(t > 0.0)) throw InvalidArgument("fominL1Norm: t must be positive");
  if (grid.dim() != spec.dim()) throw InvalidArgument("fominL1Norm: grid dimension mismatch");
  if (axis < 0 || axis >= grid.dim()) throw InvalidArgument("fominL1Norm: axis out of range");

  SymbolEvaluator psi(spec, t);
  RealFft fft(grid);
  std::vector<Complex> spectrum;
  checkAlias(fillDensitySpectrum(fft, psi, axis, spectrum), options.aliasThreshold, t);
  checkTailBudget(TailModel::forMeasure(spec, t).massOutsideBox(grid), options, grid);

  auto derivative = fft.inverseRaw(spectrum);
  double scale = 1.0;
  for (int a = 0; a < grid.dim(); ++a) scale /= 2.0 * grid.halfWidth(a);
  double acc = 0.0;
  for (double v : derivative) acc += std::abs(v);
  return acc * scale * grid.cellVolume();
}

void writeDensityCsv(std::ostream& out, const DensityTable& density,
                     const std::vector<std::string>& metadata) {
  auto lines = metadata;
  lines.push_back("mass = " + formatDouble(density.mass));
  lines.push_back("tail-mass = " + formatDouble(density.tailMass));
  lines.push_back("min-value = " + formatDouble(density.minValue));
  lines.push_back("symmetry-residual = " + formatDouble(density.symmetryResidual));
  writeCsv(out, density.asGridFunction(), lines);
}

void writeDensitySliceCsv(std::ostream& out, const DensityTable& density, int axis,
                          const std::vector<std::string>& metadata) {
  const Grid& g = density.grid;
  if (axis < 0 || axis >= g.dim()) throw InvalidArgument("slice axis out of range");
  for (const auto& line : metadata) out << "# " << line << '\n';
  out << "y,value\n";
  std::array<int, 3> idx{0, 0, 0};
  for (int a = 0; a < g.dim(); ++a) idx[a] = g.points(a) / 2;
  for (int j = 0; j < g.points(axis); ++j) {
    idx[axis] = j;
    out << formatDouble(g.coordinate(axis, j)) << ',' << formatDouble(density.values[g.flatten(idx)])
        << '\n';
  }
}

}  // namespace mehler
