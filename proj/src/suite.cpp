#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "mehler/errors.hpp"
#include "mehler/experiments.hpp"
#include "mehler/measures.hpp"
#include "mehler/seminorms.hpp"

namespace mehler {

namespace {

/// Deterministic uniforms for random test inputs, on a stream of their own.
class InputRng {
 public:
  InputRng(std::uint64_t seed, std::uint64_t stream) : sampler_({seed, stream}) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * sampler_.uniform(); }

 private:
  StableSampler sampler_;
};

// Streams for random inputs, far from the Monte Carlo path indices.
constexpr std::uint64_t kDensityStream = 1ULL << 40;
constexpr std::uint64_t kAlgebraStream = 2ULL << 40;
constexpr std::uint64_t kMonteCarloPoints = 3ULL << 40;
constexpr std::uint64_t kSamplerStream = 4ULL << 40;

std::vector<double> dyadic(Parameters& p, int kMinDefault, int kMaxDefault) {
  return dyadicTimes(p.integer("kMin", kMinDefault), p.integer("kMax", kMaxDefault));
}

std::string label(const std::string& what, double v) {
  std::ostringstream out;
  out << what << v;
  return out.str();
}

MehlerOptions periodic() {
  MehlerOptions o;
  o.extension = Extension::Periodic;
  return o;
}

// ---- criterion 1 -----------------------------------------------------------

ExperimentReport densityCauchy(const SuiteContext&, Parameters& p) {
  const auto spec = SemigroupSpec::scalar(0.0, 1.0, 0.5);
  const double t = p.number("t", 1.0);
  const Grid grid = Grid::cube(1, p.number("R", 64.0), p.integer("n", 4096));
  const DensityTable d = densityOf(spec, t, grid);
  const double c = 0.5 * t;
  double err = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid.coordinate(0, static_cast<int>(i));
    err = std::max(err, std::abs(d.values[i] - c / (M_PI * (c * c + y * y))));
  }
  ExperimentReport r;
  r.spec = spec;
  r.estimates = {{"mass", d.mass}, {"tailMass", d.tailMass}, {"valueAtOrigin", d.valueAtOrigin()}};
  r.checks.push_back(atMost("sup error vs Cauchy(t/2)", err, 1e-4));
  return r;
}

ExperimentReport densityGaussian(const SuiteContext& ctx, Parameters& p) {
  const int cases = p.integer("cases", 10);
  InputRng rng(ctx.seed, kDensityStream);
  ExperimentReport r;
  nlohmann::json rows = nlohmann::json::array();
  double worst = 0.0;
  for (int c = 0; c < cases; ++c) {
    const int dim = 1 + c % 2;
    Matrix a(dim, dim), b(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        a(i, j) = rng.uniform(-1.0, 1.0);
        b(i, j) = rng.uniform(-1.0, 1.0);
      }
    const Matrix q = b * b.transpose() + 0.5 * Matrix::Identity(dim, dim);
    const double t = rng.uniform(0.2, 1.5);
    const SemigroupSpec spec(a, q, 1.0);
    const DensityTable d = densityOf(spec, t, densityGrid(spec, t, dim == 1 ? 1024 : 256));
    const Matrix qt = gramCovariance(a, q, t);
    const Matrix inv = qt.inverse();
    const double norm = 1.0 / std::sqrt(std::pow(2.0 * M_PI, dim) * qt.determinant());
    double err = 0.0;
    for (std::size_t i = 0; i < d.grid.size(); ++i) {
      const auto x = d.grid.node(i);
      const Eigen::Map<const Vector> y(x.data(), dim);
      err = std::max(err, std::abs(d.values[i] - norm * std::exp(-0.5 * y.dot(inv * y))));
    }
    rows.push_back({{"dim", dim}, {"t", t}, {"spec", toJson(spec)}, {"supError", err}});
    worst = std::max(worst, err);
  }
  r.estimates["cases"] = rows;
  r.checks.push_back(atMost("max sup error vs N(0, Q_t)", worst, 1e-8));
  return r;
}

// ---- criterion 2 -----------------------------------------------------------

ExperimentReport momentCase(const SuiteContext& ctx, Parameters& p, double s, double gamma) {
  const auto spec = SemigroupSpec::scalar(0.0, 1.0, s);
  const int n = p.integer("n", ctx.quick ? 1 << 13 : 1 << 15);
  ExperimentReport r = momentScalingExperiment(spec, gamma, dyadic(p, 1, 8), n);
  if (s == 0.5 && gamma == 0.5) {
    // Cauchy of scale 1/2 at t = 1: E|Y|^γ = (1/2)^γ / cos(πγ/2) = 1.
    const DensityTable d = densityOf(spec, 1.0, densityGrid(spec, 1.0, n));
    const double m = absoluteMoment(d, gamma).value;
    r.estimates["momentAtT1"] = m;
    r.checks.push_back(within("Cauchy moment at t=1, gamma=1/2", m, 1.0, 0.02));
  }
  return r;
}

// ---- criterion 3 -----------------------------------------------------------

ExperimentReport smoothingCase(const SuiteContext& ctx, Parameters& p, double s) {
  const Grid grid = Grid::cube(1, p.number("R", 8.0), p.integer("n", ctx.quick ? 1 << 13 : 1 << 14));
  return smoothingExperiment(SemigroupSpec::scalar(0.0, 1.0, s),
                             TestFunctionFamily::of(FunctionKind::Step), 1, dyadic(p, 2, 7), grid);
}

// ---- criterion 4 -----------------------------------------------------------

ExperimentReport fominCase(const SuiteContext& ctx, Parameters& p, double s) {
  return fominScalingExperiment(SemigroupSpec::scalar(0.0, 1.0, s), 0, dyadic(p, 1, 8),
                                p.integer("n", ctx.quick ? 1 << 12 : 1 << 15));
}

ExperimentReport fomin2d(const SuiteContext& ctx, Parameters& p) {
  const double omega = p.number("omega", 0.5);
  Matrix a(2, 2);
  a << 0.0, omega, -omega, 0.0;
  return fominScalingExperiment(SemigroupSpec(a, Matrix::Identity(2, 2), p.number("s", 0.7)), 0,
                                dyadic(p, 1, 8), p.integer("n", ctx.quick ? 256 : 512), 0.07);
}

// ---- criterion 5 -----------------------------------------------------------

ExperimentReport holderCase(const SuiteContext&, Parameters& p, double s, double beta) {
  return holderCharacterizationExperiment(SemigroupSpec::scalar(0.0, 1.0, s), beta,
                                          dyadic(p, 1, 8),
                                          p.integer("n", 1 << 14));
}

// ---- criterion 6 -----------------------------------------------------------

ExperimentReport strongContinuity(const SuiteContext&, Parameters& p) {
  const auto spec = SemigroupSpec::scalar(1.0, 1.0, p.number("s", 0.5));
  return strongContinuityCounterexample(spec, {0.05, 0.1, 0.2}, p.number("spacing", 0.125));
}

// ---- criterion 7 -----------------------------------------------------------

ExperimentReport semigroupLaw(const SuiteContext& ctx, Parameters& p) {
  ExperimentReport r;
  nlohmann::json rows = nlohmann::json::array();
  double worstFree = 0.0, worstDrift = 0.0;
  const std::vector<double> times = {0.25, 0.5};
  // A = 0: a smooth periodic input, where the law holds up to rounding.
  const GridFunction smooth = gridEval(
      [](std::span<const double> x) {
        return std::cos(x[0]) + 0.5 * std::sin(2.0 * x[0]) + 0.25 * std::cos(3.0 * x[0]);
      },
      Grid::cube(1, M_PI, p.integer("nPeriodic", 256)));
  // A ≠ 0: a decaying input on a box, resampled along the flow.
  const GridFunction decay = gridEval(TestFunctionFamily::of(FunctionKind::RationalDecay).expr(),
                                      Grid::cube(1, p.number("R", 16.0), p.integer("n", ctx.quick ? 512 : 1024)));
  const double a = p.number("drift", -0.5);
  for (double s : {0.5, 0.8, 1.0}) {
    for (bool drift : {false, true}) {
      const auto spec = SemigroupSpec::scalar(drift ? a : 0.0, 1.0, s);
      const GridFunction& f = drift ? decay : smooth;
      const MehlerOptions opts = drift ? MehlerOptions{} : periodic();
      const double norm = supNorm(f);
      for (double t : times)
        for (double u : times) {
          const GridFunction whole = applyMehler(spec, t + u, f, opts);
          const GridFunction split = applyMehler(spec, t, applyMehler(spec, u, f, opts), opts);
          const double res = maxAbsDifference(whole, split) / norm;
          rows.push_back({{"s", s}, {"drift", drift ? a : 0.0}, {"t", t}, {"u", u}, {"residual", res}});
          (drift ? worstDrift : worstFree) = std::max(drift ? worstDrift : worstFree, res);
        }
    }
  }
  r.estimates["residuals"] = rows;
  r.checks.push_back(atMost("semigroup law residual, A = 0", worstFree, 1e-6));
  r.checks.push_back(atMost("semigroup law residual, A != 0", worstDrift, 1e-3));
  return r;
}

ExperimentReport resolventIdentity(const SuiteContext& ctx, Parameters& p) {
  const auto spec = SemigroupSpec::scalar(p.number("drift", -0.5), 1.0, p.number("s", 0.75));
  const double lambda = p.number("lambda", 1.0), mu = p.number("mu", 2.0);
  const GridFunction f = gridEval(TestFunctionFamily::of(FunctionKind::GaussianBump).expr(),
                                  Grid::cube(1, p.number("R", 16.0), p.integer("n", ctx.quick ? 512 : 1024)));
  const GridFunction rl = resolvent(spec, lambda, f);
  const GridFunction rm = resolvent(spec, mu, f);
  const GridFunction rlrm = resolvent(spec, lambda, rm);
  double res = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    res = std::max(res, std::abs(rl[i] - rm[i] - (mu - lambda) * rlrm[i]));
  ExperimentReport r;
  r.spec = spec;
  r.estimates = {{"residual", res}, {"supNorm", supNorm(f)}};
  r.checks.push_back(atMost("resolvent identity residual / ||f||", res / supNorm(f), 5e-3));
  return r;
}

ExperimentReport contractionPositivity(const SuiteContext& ctx, Parameters& p) {
  const int cases = p.integer("cases", 50);
  InputRng rng(ctx.seed, kAlgebraStream);
  const Grid grid = Grid::cube(1, p.number("R", 8.0), p.integer("n", 512));
  double worstGrowth = -INFINITY, worstNegative = INFINITY, worstResolvent = -INFINITY;
  nlohmann::json rows = nlohmann::json::array();
  for (int c = 0; c < cases; ++c) {
    const double a = rng.uniform(-1.0, 0.5), q = rng.uniform(0.5, 2.0), s = rng.uniform(0.3, 1.0);
    const double t = rng.uniform(0.05, 1.0);
    const bool positive = c % 2 == 0;
    std::array<double, 3> amp{}, centre{}, width{};
    for (int k = 0; k < 3; ++k) {
      amp[k] = positive ? rng.uniform(0.0, 1.0) : rng.uniform(-1.0, 1.0);
      centre[k] = rng.uniform(-5.0, 5.0);
      width[k] = rng.uniform(0.3, 2.0);
    }
    const GridFunction f = gridEval(
        [&](std::span<const double> x) {
          double v = 0.0;
          for (int k = 0; k < 3; ++k) v += amp[k] * std::exp(-std::pow((x[0] - centre[k]) / width[k], 2));
          return v;
        },
        grid);
    const auto spec = SemigroupSpec::scalar(a, q, s);
    const GridFunction pt = applyMehler(spec, t, f);
    const double growth = supNorm(pt) - supNorm(f);
    worstGrowth = std::max(worstGrowth, growth);
    double lowest = 0.0;
    if (positive) {
      lowest = *std::min_element(pt.values().begin(), pt.values().end());
      worstNegative = std::min(worstNegative, lowest);
    }
    double resolventGrowth = 0.0;
    // The resolvent integrates P_t up to t = 40/λ, which an expanding flow
    // carries far outside any working box; only contracting drifts qualify.
    if (a <= 0.0 && (!ctx.quick || c < 10)) {
      const double lambda = rng.uniform(0.5, 4.0);
      const GridFunction rf = resolvent(spec, lambda, f);
      resolventGrowth = lambda * supNorm(rf) - supNorm(f) * (1.0 + 1e-3);
      worstResolvent = std::max(worstResolvent, resolventGrowth);
    }
    rows.push_back({{"spec", toJson(spec)}, {"t", t}, {"positive", positive}, {"normGrowth", growth},
                    {"minValue", lowest}, {"resolventExcess", resolventGrowth}});
  }
  ExperimentReport r;
  r.estimates["cases"] = rows;
  r.checks.push_back(atMost("max ||P_t f|| - ||f||", worstGrowth, 1e-8));
  r.checks.push_back(atLeast("min P_t f over f >= 0", worstNegative, -1e-8));
  r.checks.push_back(atMost("max lambda||R f|| - (1+1e-3)||f||", worstResolvent, 0.0));
  return r;
}

ExperimentReport gammaFactor(const SuiteContext& ctx, Parameters& p) {
  const auto spec = SemigroupSpec::scalar(0.0, 1.0, p.number("s", 0.5));
  const double alpha = p.number("alpha", 0.4);
  const int inputs = p.integer("inputs", ctx.quick ? 4 : 10);
  const Grid grid = Grid::cube(1, M_PI, p.integer("n", 1 << 12));
  std::vector<GridFunction> fs;
  nlohmann::json betas = nlohmann::json::array();
  for (int i = 0; i < inputs; ++i) {
    const double beta = 0.5 + 0.45 * i / std::max(inputs - 1, 1);
    betas.push_back(beta);
    fs.push_back(gridEval(TestFunctionFamily::weierstrass(beta).expr(), grid));
  }
  ExperimentReport r = gammaFactorExperiment(spec, fs, alpha, periodic());
  r.estimates["betas"] = betas;
  return r;
}

// ---- criterion 8 -----------------------------------------------------------

ExperimentReport monteCarlo(const SuiteContext& ctx, Parameters& p) {
  const double omega = p.number("omega", 0.5), t = p.number("t", 0.5);
  Matrix a(2, 2);
  a << 0.0, omega, -omega, 0.0;
  const SemigroupSpec spec(a, Matrix::Identity(2, 2), p.number("s", 0.7));
  const PointFunction f = TestFunctionFamily::of(FunctionKind::GaussianBump).expr();
  const Grid grid = Grid::cube(2, p.number("R", 8.0), p.integer("n", 256));
  const GridFunction spectral = applyMehler(spec, t, gridEval(f, grid));

  InputRng rng(ctx.seed, kMonteCarloPoints);
  const int numPoints = p.integer("points", 10);
  std::vector<Vector> points;
  std::vector<std::size_t> nodes;
  for (int k = 0; k < numPoints; ++k) {
    std::array<int, 3> idx{0, 0, 0};
    for (int ax = 0; ax < 2; ++ax)
      idx[ax] = grid.points(ax) / 2 + static_cast<int>(std::floor(rng.uniform(-0.2, 0.2) * grid.points(ax)));
    nodes.push_back(grid.flatten(idx));
    const auto x = grid.node(nodes.back());
    points.push_back(Vector::Map(x.data(), 2));
  }
  MCConfig cfg;
  cfg.numPaths = p.integer("paths", ctx.quick ? 5000 : 20000);
  cfg.numSteps = p.integer("steps", 16);
  const int seeds = p.integer("seeds", ctx.quick ? 3 : 10);
  double worst = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (int sd = 0; sd < seeds; ++sd) {
    cfg.seed = ctx.seed * 1000 + static_cast<std::uint64_t>(sd);
    const auto est = applyMehlerMC(spec, t, f, points, cfg);
    for (int k = 0; k < numPoints; ++k) {
      const double z = std::abs(est[k].estimate - spectral[nodes[k]]) / est[k].stderr_;
      worst = std::max(worst, z);
      rows.push_back({{"seed", cfg.seed}, {"point", {points[k](0), points[k](1)}},
                      {"mc", est[k].estimate}, {"stderr", est[k].stderr_},
                      {"spectral", spectral[nodes[k]]}, {"z", z}});
    }
  }
  ExperimentReport r;
  r.spec = spec;
  r.estimates["comparisons"] = rows;
  r.checks.push_back(atMost("max |MC - spectral| / stderr", worst, 4.0));
  return r;
}

/// Kolmogorov–Smirnov distance between increments drawn by the sampler and
/// the CDF integrated from the Fourier-inverted density.
ExperimentReport samplerKs(const SuiteContext& ctx, Parameters& p) {
  const int samples = p.integer("samples", 100000);
  const double t = p.number("t", 1.0);
  ExperimentReport r;
  nlohmann::json rows = nlohmann::json::array();
  std::uint64_t stream = kSamplerStream;
  for (double s : {0.5, 0.7, 1.0}) {
    const auto spec = SemigroupSpec::scalar(0.0, 1.0, s);
    // Finest grid whose box still holds all but 1e-4 of the mass: the CDF
    // is interpolated linearly between nodes.
    Grid grid = densityGrid(spec, t, 1 << 15);
    for (double decay = 60.0; decay < 1e7; decay *= 2.0) {
      const Grid finer = densityGrid(spec, t, 1 << 15, decay);
      if (TailModel::forMeasure(spec, t).massOutsideBox(finer) > 1e-4) break;
      grid = finer;
    }
    const DensityTable d = densityOf(spec, t, grid);
    const Grid& g = d.grid;
    const double h = g.spacing(0);
    // cdf[j] = F at node j, trapezoid rule from the left tail.
    std::vector<double> cdf(g.size());
    double acc = 0.5 * d.tailMass;
    cdf[0] = acc;
    for (std::size_t j = 1; j < g.size(); ++j) {
      acc += 0.5 * h * (d.values[j - 1] + d.values[j]);
      cdf[j] = acc;
    }
    auto cdfAt = [&](double y) {
      const double pos = (y + g.halfWidth(0)) / h;
      if (pos <= 0.0) return 0.5 * d.tailMass;
      const auto j = static_cast<std::size_t>(pos);
      if (j + 1 >= g.size()) return 1.0 - 0.5 * d.tailMass;
      const double w = pos - static_cast<double>(j);
      return (1.0 - w) * cdf[j] + w * cdf[j + 1];
    };
    StableSampler sampler({ctx.seed, stream++});
    std::vector<double> ys(samples);
    double y = 0.0;
    for (double& v : ys) {
      sampler.levyIncrement(spec, t, std::span<double>(&y, 1));
      v = y;
    }
    std::sort(ys.begin(), ys.end());
    double ks = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double f = cdfAt(ys[i]);
      ks = std::max({ks, (i + 1.0) / samples - f, f - static_cast<double>(i) / samples});
    }
    rows.push_back({{"s", s}, {"ks", ks}});
    r.checks.push_back(atMost(label("KS distance, s=", s), ks, 0.005));
  }
  r.estimates["ks"] = rows;
  return r;
}

// ---- criterion 9 -----------------------------------------------------------

ExperimentReport landau(const SuiteContext&, Parameters&) { return landauInequalityCheck(landauFamily()); }

ExperimentReport kFunctional(const SuiteContext& ctx, Parameters& p) {
  const double beta = p.number("beta", 0.5);
  const auto w = TestFunctionFamily::weierstrass(beta);
  const Grid grid = Grid::cube(1, M_PI, p.integer("n", ctx.quick ? 1 << 13 : 1 << 14));
  std::vector<double> scales;
  for (int k = -14; k <= 2; ++k) scales.push_back(std::ldexp(1.0, k));
  std::vector<std::pair<double, double>> samples;
  for (int k = 2; k <= 10; ++k) {
    const double xi = std::ldexp(1.0, -k);
    samples.emplace_back(xi, kFunctionalUpper(w.expr(), grid, xi, scales));
  }
  ExperimentReport r;
  r.fit = fitScaling(samples);
  r.estimates["beta"] = beta;
  r.checks.push_back(within("K-functional exponent", r.fit->exponent, beta, 0.1));
  return r;
}

ExperimentReport zygmundAffine(const SuiteContext&, Parameters& p) {
  const double slope = p.number("slope", 3.0), offset = p.number("offset", -1.0);
  const GridFunction f1 = gridEval([&](std::span<const double> x) { return slope * x[0] + offset; },
                                   Grid::cube(1, 1.0, 1024));
  const GridFunction f2 = gridEval(
      [&](std::span<const double> x) { return slope * x[0] - 0.5 * x[1] + offset; },
      Grid::cube(2, 1.0, 128));
  const double z1 = zygmundSeminorm(f1).value, z2 = zygmundSeminorm(f2).value;
  ExperimentReport r;
  r.estimates = {{"zygmund1d", z1}, {"zygmund2d", z2}};
  r.checks.push_back(atMost("Zygmund seminorm of affine f (1-D)", z1, 1e-12));
  r.checks.push_back(atMost("Zygmund seminorm of affine f (2-D)", z2, 1e-12));
  return r;
}

std::vector<SuiteEntry> buildSuite() {
  std::vector<SuiteEntry> s;
  s.push_back({"density-cauchy", 1, "s=1/2 density vs Cauchy", densityCauchy});
  s.push_back({"density-gaussian", 1, "s=1 densities vs N(0, Q_t)", densityGaussian});
  s.push_back({"moment-s0.5", 2, "moment exponent, s=0.5, gamma=0.5",
               [](const SuiteContext& c, Parameters& p) { return momentCase(c, p, 0.5, 0.5); }});
  s.push_back({"moment-s0.75", 2, "moment exponent, s=0.75, gamma=1",
               [](const SuiteContext& c, Parameters& p) { return momentCase(c, p, 0.75, 1.0); }});
  s.push_back({"moment-s0.9", 2, "moment exponent, s=0.9, gamma=1.5",
               [](const SuiteContext& c, Parameters& p) { return momentCase(c, p, 0.9, 1.5); }});
  s.push_back({"smoothing-s0.5", 3, "step gradient blow-up, s=0.5",
               [](const SuiteContext& c, Parameters& p) { return smoothingCase(c, p, 0.5); }});
  s.push_back({"smoothing-s1", 3, "step gradient blow-up, s=1",
               [](const SuiteContext& c, Parameters& p) { return smoothingCase(c, p, 1.0); }});
  s.push_back({"fomin-s0.5", 4, "Fomin L1 exponent, s=0.5",
               [](const SuiteContext& c, Parameters& p) { return fominCase(c, p, 0.5); }});
  s.push_back({"fomin-s0.7", 4, "Fomin L1 exponent, s=0.7",
               [](const SuiteContext& c, Parameters& p) { return fominCase(c, p, 0.7); }});
  s.push_back({"fomin-s1", 4, "Fomin L1 exponent, s=1",
               [](const SuiteContext& c, Parameters& p) { return fominCase(c, p, 1.0); }});
  s.push_back({"fomin-2d-rotation", 4, "Fomin L1 exponent, 2-D rotation drift", fomin2d});
  s.push_back({"holder-s0.5-b0.5", 5, "Hoelder characterization, s=0.5, beta=0.5",
               [](const SuiteContext& c, Parameters& p) { return holderCase(c, p, 0.5, 0.5); }});
  s.push_back({"holder-s0.8-b0.64", 5, "Hoelder characterization, s=0.8, beta=0.64",
               [](const SuiteContext& c, Parameters& p) { return holderCase(c, p, 0.8, 0.64); }});
  s.push_back({"holder-s1-b0.6", 5, "Hoelder characterization, s=1, beta=0.6",
               [](const SuiteContext& c, Parameters& p) { return holderCase(c, p, 1.0, 0.6); }});
  s.push_back({"strong-continuity", 6, "A=[1]: cos obstruction and control", strongContinuity});
  s.push_back({"semigroup-law", 7, "P_{t+u} = P_t P_u", semigroupLaw});
  s.push_back({"resolvent-identity", 7, "first resolvent identity", resolventIdentity});
  s.push_back({"contraction-positivity", 7, "contraction and positivity, random inputs",
               contractionPositivity});
  s.push_back({"gamma-factor", 7, "[f]3 <= Gamma(a+1)[f]1 on Weierstrass inputs", gammaFactor});
  s.push_back({"monte-carlo", 8, "MC vs spectral P_t f", monteCarlo});
  s.push_back({"sampler-ks", 8, "sampler KS distance vs density", samplerKs});
  s.push_back({"landau", 9, "Landau ratio over the family", landau});
  s.push_back({"k-functional", 9, "K-functional exponent for W_beta", kFunctional});
  s.push_back({"zygmund-affine", 9, "Zygmund seminorm of affine functions", zygmundAffine});
  return s;
}

}  // namespace

const std::vector<SuiteEntry>& acceptanceSuite() {
  static const std::vector<SuiteEntry> suite = buildSuite();
  return suite;
}

const SuiteEntry* findExperiment(const std::string& name) {
  for (const auto& e : acceptanceSuite())
    if (e.name == name) return &e;
  return nullptr;
}

ExperimentReport runExperiment(const SuiteEntry& entry, const SuiteContext& context) {
  std::map<std::string, std::string> overrides;
  if (auto it = context.overrides.find(entry.name); it != context.overrides.end())
    overrides = it->second;
  Parameters params(overrides);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  try {
    report = entry.run(context, params);
  } catch (const NumericalError& e) {
    report = ExperimentReport{};
    report.error = e.what();
  }
  report.runtimeSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.name = entry.name;
  report.criterion = entry.criterion;
  report.parameters = params.used();
  report.parameters["quick"] = context.quick;
  report.parameters["seed"] = context.seed;
  if (const auto unused = params.unused(); !unused.empty())
    throw InvalidArgument("experiment '" + entry.name + "': unknown parameter '" + unused.front() + "'");
  report.conclude();
  return report;
}

std::string summaryCsv(const std::vector<ExperimentReport>& reports,
                       const std::vector<std::string>& metadata) {
  std::ostringstream out;
  for (const auto& m : metadata) out << "# " << m << "\n";
  out << "name,criterion,expected,measured,tolerance,verdict\n";
  for (const auto& r : reports) {
    const Check h = r.headline();
    out << r.name << "," << r.criterion << "," << formatDouble(h.expected) << ","
        << formatDouble(h.measured) << "," << formatDouble(h.tolerance) << "," << toString(r.verdict)
        << "\n";
  }
  return out.str();
}

std::string timingCsv(const std::vector<ExperimentReport>& reports,
                      const std::vector<std::string>& metadata) {
  std::ostringstream out;
  for (const auto& m : metadata) out << "# " << m << "\n";
  out << "name,runtimeSeconds\n";
  for (const auto& r : reports) out << r.name << "," << formatDouble(r.runtimeSeconds) << "\n";
  return out.str();
}

}  // namespace mehler
