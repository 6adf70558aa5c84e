#include "mehler/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mehler/errors.hpp"

namespace mehler {

namespace {

int nextPowerOfTwo(std::size_t n) {
  int p = 8;
  while (static_cast<std::size_t>(p) < n) p *= 2;
  return p;
}

/// 4-point Lagrange weights for nodes at offsets -1, 0, 1, 2 from floor(p).
std::array<double, 4> cubicWeights(double u) {
  return {-u * (u - 1.0) * (u - 2.0) / 6.0, (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0,
          -(u + 1.0) * u * (u - 2.0) / 2.0, (u + 1.0) * u * (u - 1.0) / 6.0};
}

}  // namespace

struct MehlerPropagator::Working {
  Grid grid;
  std::array<int, 3> offset{0, 0, 0};
  std::unique_ptr<RealFft> fft;
  std::vector<Complex> spectrum;
  std::vector<std::array<double, 3>> xi;
  std::vector<char> nyquist;
  std::vector<double> unitSymbol;  // ψ_1, drift-free case only

  explicit Working(Grid g) : grid(std::move(g)) {}
};

MehlerPropagator::MehlerPropagator(const SemigroupSpec& spec, const GridFunction& f, double tMax,
                                   MehlerOptions options)
    : spec_(spec), input_(f), tMax_(tMax), options_(options) {
  const Grid& in = f.grid();
  if (in.dim() != spec.dim()) throw InvalidArgument("MehlerPropagator: grid dimension mismatch");
  if (!(tMax >= 0.0) || !std::isfinite(tMax))
    throw InvalidArgument("MehlerPropagator: tMax must be finite and nonnegative");
  const int dim = in.dim();

  if (options.extension == Extension::Periodic) {
    work_ = std::make_unique<Working>(in);
  } else {
    std::vector<double> reach(dim);
    for (int a = 0; a < dim; ++a) reach[a] = in.halfWidth(a);
    if (!spec.driftFree()) {
      constexpr int kSamples = 32;
      for (int k = 1; k <= kSamples; ++k) {
        Matrix m = matExp(spec.drift(), tMax * k / kSamples);
        for (int a = 0; a < dim; ++a) {
          double r = 0.0;
          for (int b = 0; b < dim; ++b) r += std::abs(m(a, b)) * in.halfWidth(b);
          reach[a] = std::max(reach[a], r);
        }
      }
    }
    double padRadius = 0.0;
    TailModel tail;
    if (tMax > 0.0) {
      tail = TailModel::forMeasure(spec, tMax);
      padRadius = tail.radiusForMass(options.padTailMass);
    }
    std::vector<double> halfWidth(dim);
    std::vector<int> points(dim);
    std::size_t total = 1;
    double minPad = INFINITY;
    for (int a = 0; a < dim; ++a) {
      const double h = in.spacing(a);
      const double pad = std::min(padRadius, options.maxPadFactor * in.halfWidth(a));
      minPad = std::min(minPad, pad);
      const double needed = std::ceil(2.0 * (reach[a] + pad) / h - 1e-9);
      if (!(needed <= static_cast<double>(options.maxWorkingPoints))) {
        std::ostringstream msg;
        msg << "e^{tA}·box for t <= " << tMax << " needs about " << needed
            << " points on axis " << a << ", beyond the budget " << options.maxWorkingPoints;
        throw DomainEscape(msg.str());
      }
      points[a] = std::max(in.points(a), nextPowerOfTwo(static_cast<std::size_t>(needed)));
      halfWidth[a] = 0.5 * points[a] * h;
      total *= static_cast<std::size_t>(points[a]);
    }
    if (total > options.maxWorkingPoints) {
      std::ostringstream msg;
      msg << "working grid of " << total << " points needed to hold e^{tA}·box for t <= " << tMax
          << " exceeds the budget " << options.maxWorkingPoints;
      throw DomainEscape(msg.str());
    }
    if (tMax > 0.0) wrapTailMass_ = tail.massOutsideBall(minPad);
    work_ = std::make_unique<Working>(Grid(halfWidth, points));
    for (int a = 0; a < dim; ++a) work_->offset[a] = (points[a] - in.points(a)) / 2;
  }

  Working& w = *work_;
  std::vector<double> extended(w.grid.size());
  for (std::size_t i = 0; i < w.grid.size(); ++i) {
    auto idx = w.grid.unflatten(i);
    for (int a = 0; a < dim; ++a) idx[a] = std::clamp(idx[a] - w.offset[a], 0, in.points(a) - 1);
    extended[i] = f[in.flatten(idx)];
  }
  w.fft = std::make_unique<RealFft>(w.grid);
  w.spectrum = w.fft->forward(extended);
  w.xi.resize(w.spectrum.size());
  w.nyquist.resize(w.spectrum.size());
  for (std::size_t i = 0; i < w.spectrum.size(); ++i) {
    Frequency fr = w.fft->frequency(i);
    w.xi[i] = fr.xi;
    w.nyquist[i] = fr.onNyquistShell();
  }
  if (spec.driftFree()) {
    SymbolEvaluator unit(spec, 1.0);
    w.unitSymbol.resize(w.xi.size());
    for (std::size_t i = 0; i < w.xi.size(); ++i) w.unitSymbol[i] = unit(w.xi[i]);
  }
}

MehlerPropagator::~MehlerPropagator() = default;
MehlerPropagator::MehlerPropagator(MehlerPropagator&&) noexcept = default;

const Grid& MehlerPropagator::workingGrid() const { return work_->grid; }

GridFunction MehlerPropagator::apply(double t) const { return propagate(t, {}); }

GridFunction MehlerPropagator::applyDerivative(double t, std::span<const int> axes) const {
  for (int a : axes)
    if (a < 0 || a >= spec_.dim()) throw InvalidArgument("applyDerivative: axis out of range");
  return propagate(t, axes);
}

GridFunction MehlerPropagator::propagate(double t, std::span<const int> axes) const {
  if (!(t >= 0.0) || t > tMax_ * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "MehlerPropagator: t = " << t << " outside [0, " << tMax_ << "]";
    throw InvalidArgument(msg.str());
  }
  if (t == 0.0 && axes.empty()) return input_;

  const Working& w = *work_;
  const Grid& in = input_.grid();
  const int dim = in.dim();
  const bool flows = !spec_.driftFree() && t > 0.0;
  const Matrix m = flows ? matExp(spec_.drift(), t) : Matrix::Identity(dim, dim);

  std::vector<Complex> spectrum = w.spectrum;
  std::unique_ptr<SymbolEvaluator> psi;
  if (t > 0.0 && w.unitSymbol.empty()) psi = std::make_unique<SymbolEvaluator>(spec_, t);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    if (!axes.empty() && w.nyquist[i]) {
      spectrum[i] = 0.0;
      continue;
    }
    double decay = 1.0;
    if (t > 0.0) decay = std::exp(psi ? -(*psi)(w.xi[i]) : -t * w.unitSymbol[i]);
    Complex factor(decay, 0.0);
    for (int a : axes) {
      double dir = 0.0;  // (Mᵀξ)_a
      for (int b = 0; b < dim; ++b) dir += m(b, a) * w.xi[i][b];
      factor *= Complex(0.0, dir);
    }
    spectrum[i] *= factor;
  }
  const std::vector<double> u = w.fft->inverse(spectrum);

  std::vector<double> out(in.size());
  if (!flows) {
    for (std::size_t i = 0; i < in.size(); ++i) {
      auto idx = in.unflatten(i);
      for (int a = 0; a < dim; ++a) idx[a] += w.offset[a];
      out[i] = u[w.grid.flatten(idx)];
    }
    return GridFunction(in, std::move(out));
  }

  const bool periodic = options_.extension == Extension::Periodic;
  for (std::size_t i = 0; i < in.size(); ++i) {
    auto x = in.node(i);
    std::array<int, 3> base{0, 0, 0};
    std::array<std::array<double, 4>, 3> weights{};
    for (int a = 0; a < dim; ++a) {
      double z = 0.0;
      for (int b = 0; b < dim; ++b) z += m(a, b) * x[b];
      const double p = (z + w.grid.halfWidth(a)) / w.grid.spacing(a);
      const double fl = std::floor(p);
      base[a] = static_cast<int>(fl) - 1;
      weights[a] = cubicWeights(p - fl);
    }
    double acc = 0.0;
    const int stencil = 1 << (2 * dim);
    for (int s = 0; s < stencil; ++s) {
      std::array<int, 3> idx{0, 0, 0};
      double weight = 1.0;
      for (int a = 0; a < dim; ++a) {
        const int o = (s >> (2 * a)) & 3;
        const int n = w.grid.points(a);
        int j = base[a] + o;
        j = periodic ? ((j % n) + n) % n : std::clamp(j, 0, n - 1);
        idx[a] = j;
        weight *= weights[a][o];
      }
      acc += weight * u[w.grid.flatten(idx)];
    }
    out[i] = acc;
  }
  return GridFunction(in, std::move(out));
}

GridFunction applyMehler(const SemigroupSpec& spec, double t, const GridFunction& f,
                         const MehlerOptions& options) {
  if (!(t >= 0.0)) throw InvalidArgument("applyMehler: t must be nonnegative");
  if (t == 0.0) return f;
  return MehlerPropagator(spec, f, t, options).apply(t);
}

// ---- Monte Carlo --------------------------------------------------------

std::vector<MCEstimate> applyMehlerMC(const SemigroupSpec& spec, double t, const PointFunction& f,
                                      const std::vector<Vector>& points, const MCConfig& config) {
  if (!(t > 0.0)) throw InvalidArgument("applyMehlerMC: t must be positive");
  if (config.numPaths < 100) throw InvalidArgument("applyMehlerMC: numPaths must be >= 100");
  if (config.numSteps < 1) throw InvalidArgument("applyMehlerMC: numSteps must be >= 1");
  const int dim = spec.dim();
  for (const auto& x : points)
    if (x.size() != dim) throw InvalidArgument("applyMehlerMC: point dimension mismatch");

  const double dt = t / config.numSteps;
  const bool flows = !spec.driftFree();
  std::vector<Matrix> propagators;
  if (flows)
    for (int j = 0; j < config.numSteps; ++j) propagators.push_back(matExp(spec.drift(), t - j * dt));
  const Matrix flow = matExp(spec.drift(), t);
  std::vector<Vector> starts;
  for (const auto& x : points) starts.push_back(flow * x);

  std::vector<double> mean(points.size(), 0.0), m2(points.size(), 0.0);
  Vector noise(dim), increment(dim), state(dim);
  for (std::int64_t p = 0; p < config.numPaths; ++p) {
    StableSampler sampler({config.seed, static_cast<std::uint64_t>(p)});
    noise.setZero();
    for (int j = 0; j < config.numSteps; ++j) {
      sampler.levyIncrement(spec, dt, std::span<double>(increment.data(), dim));
      if (flows) noise += propagators[j] * increment;
      else noise += increment;
    }
    const double count = static_cast<double>(p + 1);
    for (std::size_t k = 0; k < points.size(); ++k) {
      state = starts[k] + noise;
      const double v = f(std::span<const double>(state.data(), dim));
      const double delta = v - mean[k];
      mean[k] += delta / count;
      m2[k] += delta * (v - mean[k]);
    }
  }
  std::vector<MCEstimate> out(points.size());
  const double n = static_cast<double>(config.numPaths);
  for (std::size_t k = 0; k < points.size(); ++k) {
    out[k].estimate = mean[k];
    out[k].stderr_ = std::sqrt(m2[k] / (n - 1.0) / n);
  }
  return out;
}

// ---- resolvent ------------------------------------------------------------

ResolventQuadrature ResolventQuadrature::geometric(double lambda, int nodes, double tMin,
                                                   double tMaxFactor) {
  if (!(lambda > 0.0)) throw InvalidArgument("resolvent: lambda must be positive");
  if (nodes < 2 || !(tMin > 0.0)) throw InvalidArgument("resolvent: invalid quadrature setup");
  ResolventQuadrature q;
  q.lambda = lambda;
  q.tMin = tMin;
  q.tMax = tMaxFactor / lambda;
  if (!(q.tMax > tMin)) throw InvalidArgument("resolvent: lambda too large for tMin");
  const double lo = std::log(q.tMin);
  const double du = (std::log(q.tMax) - lo) / (nodes - 1);
  for (int j = 0; j < nodes; ++j) {
    const double t = (j == nodes - 1) ? q.tMax : std::exp(lo + j * du);
    double w = du * t * std::exp(-lambda * t);
    if (j == 0 || j == nodes - 1) w *= 0.5;
    q.tNodes.push_back(t);
    q.weights.push_back(w);
  }
  return q;
}

namespace {

/// ∫ e^{-λt}(P_t f - f) dt over the quadrature nodes.
std::vector<double> laplaceDefect(const MehlerPropagator& propagator, double lambda) {
  const auto quad = ResolventQuadrature::geometric(lambda);
  if (quad.tMax > propagator.tMax() * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "resolvent: propagator covers t <= " << propagator.tMax() << " but lambda = " << lambda
        << " needs " << quad.tMax;
    throw InvalidArgument(msg.str());
  }
  const auto& f = propagator.input().values();
  std::vector<double> acc(f.size(), 0.0);
  for (std::size_t j = 0; j < quad.tNodes.size(); ++j) {
    const GridFunction pt = propagator.apply(quad.tNodes[j]);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += quad.weights[j] * (pt[i] - f[i]);
  }
  return acc;
}

}  // namespace

GridFunction resolvent(const MehlerPropagator& propagator, double lambda) {
  auto acc = laplaceDefect(propagator, lambda);
  const auto& f = propagator.input().values();
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += f[i] / lambda;
  return GridFunction(propagator.input().grid(), std::move(acc));
}

GridFunction resolvent(const SemigroupSpec& spec, double lambda, const GridFunction& f,
                       const MehlerOptions& options) {
  const auto quad = ResolventQuadrature::geometric(lambda);
  return resolvent(MehlerPropagator(spec, f, quad.tMax, options), lambda);
}

GridFunction generatorAction(const MehlerPropagator& propagator, double lambda) {
  auto acc = laplaceDefect(propagator, lambda);
  for (double& v : acc) v *= lambda;
  return GridFunction(propagator.input().grid(), std::move(acc));
}

GridFunction generatorAction(const SemigroupSpec& spec, double lambda, const GridFunction& f,
                             const MehlerOptions& options) {
  const auto quad = ResolventQuadrature::geometric(lambda);
  return generatorAction(MehlerPropagator(spec, f, quad.tMax, options), lambda);
}

// ---- derivatives -------------------------------------------------------------

double derivativeSup(const SemigroupSpec& spec, double t, const GridFunction& f, int k,
                     const MehlerOptions& options) {
  if (!(t > 0.0)) throw InvalidArgument("derivativeSup: t must be positive");
  if (k < 1) throw InvalidArgument("derivativeSup: order must be >= 1");
  const double scale = std::pow(t, 1.0 / spec.stableIndex());
  if (scale < 4.0 * f.grid().maxSpacing()) {
    std::ostringstream msg;
    msg << "smoothing scale t^{1/(2s)} = " << scale << " is below 4 x spacing "
        << f.grid().maxSpacing();
    throw UnderResolved(msg.str());
  }
  MehlerPropagator propagator(spec, f, t, options);
  const int dim = spec.dim();
  std::vector<int> axes(k, 0);
  double best = 0.0;
  while (true) {
    const GridFunction d = propagator.applyDerivative(t, axes);
    for (double v : d.values()) best = std::max(best, std::abs(v));
    // next nondecreasing axis tuple
    int pos = k - 1;
    while (pos >= 0 && axes[pos] == dim - 1) --pos;
    if (pos < 0) break;
    ++axes[pos];
    for (int q = pos + 1; q < k; ++q) axes[q] = axes[pos];
  }
  return best;
}

double timeDerivativeResidual(const SemigroupSpec& spec, double lambda, const GridFunction& g,
                              double h, const MehlerOptions& options) {
  if (!(h > 0.0)) throw InvalidArgument("timeDerivativeResidual: h must be positive");
  const GridFunction f = resolvent(spec, lambda, g, options);
  const GridFunction ph = applyMehler(spec, h, f, options);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double quotient = (ph[i] - f[i]) / h;
    const double generator = lambda * f[i] - g[i];
    worst = std::max(worst, std::abs(quotient - generator));
  }
  return worst;
}

}  // namespace mehler
