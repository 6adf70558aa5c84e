#include "mehler/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mehler/errors.hpp"

namespace mehler {

namespace {

/// Groups (octave, value) samples and folds them into octave maxima, octaves
/// sorted so that the singular edge comes last.
struct OctaveAccumulator {
  std::vector<std::pair<int, double>> samples;

  void add(int octave, double value) { samples.emplace_back(octave, value); }

  std::vector<double> sups() const {
    std::vector<int> keys;
    for (const auto& [k, v] : samples) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<double> out(keys.size(), 0.0);
    for (const auto& [k, v] : samples) {
      const auto pos = std::lower_bound(keys.begin(), keys.end(), k) - keys.begin();
      out[pos] = std::max(out[pos], v);
    }
    return out;
  }
};

int floorLog2(double x) { return static_cast<int>(std::floor(std::log2(x) + 1e-12)); }

std::string plateauNote(const SeminormEstimate& e, const std::string& resolution) {
  std::ostringstream note;
  note << (e.diverged ? "no plateau" : "plateau") << " at resolution " << resolution;
  return note.str();
}

/// Offset directions: unit axis steps plus the main diagonals.
std::vector<std::array<int, 3>> searchDirections(int dim) {
  std::vector<std::array<int, 3>> dirs;
  for (int a = 0; a < dim; ++a) {
    std::array<int, 3> d{0, 0, 0};
    d[a] = 1;
    dirs.push_back(d);
  }
  if (dim == 2) {
    dirs.push_back({1, 1, 0});
    dirs.push_back({1, -1, 0});
  } else if (dim == 3) {
    dirs.push_back({1, 1, 1});
    dirs.push_back({1, 1, -1});
  }
  return dirs;
}

/// Shared pair search. `order` 1 gives first differences, 2 second.
SeminormEstimate pairSearch(const GridFunction& f, int order, double alpha) {
  const Grid& g = f.grid();
  const int dim = g.dim();
  const auto& v = f.values();
  const double minH = 2.0 * g.maxSpacing() * (1.0 - 1e-12);
  const double maxH = 0.5 * g.minHalfWidth() * (1.0 + 1e-12);

  SeminormEstimate best;
  OctaveAccumulator octaves;
  std::size_t bestIndex = 0;
  std::array<int, 3> bestStep{0, 0, 0};
  bool found = false;
  for (const auto& dir : searchDirections(dim)) {
    for (int m = 1;; ++m) {
      double len2 = 0.0;
      bool fits = true;
      for (int a = 0; a < dim; ++a) {
        const double d = m * dir[a] * g.spacing(a);
        len2 += d * d;
        if (order * m * std::abs(dir[a]) >= g.points(a)) fits = false;
      }
      const double len = std::sqrt(len2);
      if (len > maxH || !fits) break;
      if (len < minH) continue;

      std::array<int, 3> step{m * dir[0], m * dir[1], m * dir[2]};
      double worst = -1.0;
      std::size_t worstIndex = 0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const auto idx = g.unflatten(i);
        std::array<int, 3> j1 = idx, j2 = idx;
        bool inside = true;
        for (int a = 0; a < dim; ++a) {
          j1[a] += step[a];
          j2[a] += order * step[a];
          if (j2[a] < 0 || j2[a] >= g.points(a)) inside = false;
        }
        if (!inside) continue;
        const double diff = order == 1
                                ? std::abs(v[g.flatten(j1)] - v[i])
                                : std::abs(v[g.flatten(j2)] - 2.0 * v[g.flatten(j1)] + v[i]);
        if (diff > worst) {
          worst = diff;
          worstIndex = i;
        }
      }
      if (worst < 0.0) continue;
      const double ratio = worst / std::pow(len, alpha);
      best.parameterRange.push_back(len);
      // Octaves of decreasing ‖h‖: the singular edge (small h) comes last.
      octaves.add(-floorLog2(len / g.maxSpacing()), ratio);
      if (ratio > best.value || !found) {
        best.value = ratio;
        bestIndex = worstIndex;
        bestStep = step;
        found = true;
      }
    }
  }
  best.octaveSups = octaves.sups();
  best.diverged = plateauDiverged(best.octaveSups);
  if (found) {
    const auto idx = g.unflatten(bestIndex);
    const auto x = g.node(bestIndex);
    best.witness.node.assign(idx.begin(), idx.begin() + dim);
    best.witness.step.assign(bestStep.begin(), bestStep.begin() + dim);
    best.witness.point.assign(x.begin(), x.begin() + dim);
    double len2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      best.witness.offset.push_back(bestStep[a] * g.spacing(a));
      len2 += best.witness.offset.back() * best.witness.offset.back();
    }
    best.witness.parameter = std::sqrt(len2);
  }
  std::ostringstream res;
  res << "spacing " << g.maxSpacing();
  best.note = plateauNote(best, res.str());
  return best;
}

}  // namespace

nlohmann::json toJson(const SeminormEstimate& e) {
  nlohmann::json witness = {{"node", e.witness.node},
                            {"step", e.witness.step},
                            {"point", e.witness.point},
                            {"offset", e.witness.offset},
                            {"parameter", e.witness.parameter}};
  return {{"value", e.value},
          {"diverged", e.diverged},
          {"witness", witness},
          {"parameterRange", e.parameterRange},
          {"octaveSups", e.octaveSups},
          {"note", e.note}};
}

bool plateauDiverged(const std::vector<double>& octaveSups, double growth) {
  if (octaveSups.size() < 2) return false;
  const double before = *std::max_element(octaveSups.begin(), octaveSups.end() - 1);
  const double last = octaveSups.back();
  return last > 0.0 && last >= (1.0 + growth) * before;
}

SeminormEstimate refine(const SeminormEstimate& base, const SeminormEstimate& refined,
                        double growth) {
  SeminormEstimate out = refined;
  out.diverged = refined.diverged || refined.value >= (1.0 + growth) * base.value;
  std::ostringstream note;
  note << refined.note << "; refinement " << base.value << " -> " << refined.value;
  out.note = note.str();
  return out;
}

double supNorm(const GridFunction& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

SeminormEstimate holderSeminorm(const GridFunction& f, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("holderSeminorm: alpha must lie in (0,1)");
  return pairSearch(f, 1, alpha);
}

SeminormEstimate zygmundSeminorm(const GridFunction& f) { return pairSearch(f, 2, 1.0); }

SeminormEstimate flowSeminorm(const SemigroupSpec& spec, const PointFunction& f, double alpha,
                              const std::vector<double>& tSet, const FlowOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("flowSeminorm: alpha must lie in (0,1)");
  if (tSet.empty()) throw InvalidArgument("flowSeminorm: empty tSet");
  const int dim = spec.dim();
  SeminormEstimate best;
  OctaveAccumulator octaves;

  for (double t : tSet) {
    if (!(t > 0.0)) throw InvalidArgument("flowSeminorm: times must be positive");
    const Matrix m = matExp(spec.drift(), t);
    auto sweep = [&](double r, std::vector<double>& arg) {
      const auto perAxis = static_cast<std::size_t>(std::llround(2.0 * r / options.spacing)) + 1;
      std::size_t total = 1;
      for (int a = 0; a < dim; ++a) total *= perAxis;
      if (total > options.maxPoints) return -1.0;
      double worst = 0.0;
      std::vector<double> x(dim), y(dim);
      for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        for (int a = dim - 1; a >= 0; --a) {
          x[a] = -r + static_cast<double>(rest % perAxis) * options.spacing;
          rest /= perAxis;
        }
        for (int a = 0; a < dim; ++a) {
          y[a] = 0.0;
          for (int b = 0; b < dim; ++b) y[a] += m(a, b) * x[b];
        }
        const double d = std::abs(f(y) - f(x));
        if (!std::isfinite(d)) throw NonFiniteValue("flowSeminorm: non-finite function value");
        if (d > worst) {
          worst = d;
          arg = x;
        }
      }
      return worst;
    };

    double r = options.initialHalfWidth;
    std::vector<double> arg(dim, 0.0), nextArg(dim, 0.0);
    double value = sweep(r, arg);
    while (true) {
      const double next = sweep(2.0 * r, nextArg);
      if (next < 0.0) {
        std::ostringstream msg;
        msg << "t = " << t << ": sup over |x| <= " << r << " is " << value
            << " and the doubled cube exceeds the point budget";
        throw NoPlateau(msg.str());
      }
      const bool flat = std::abs(next - value) <= options.plateauTolerance * std::max(value, 1e-300);
      if (next >= value) {
        value = next;
        arg = nextArg;
      }
      r *= 2.0;
      if (flat) break;
    }

    const double ratio = std::pow(t, -alpha) * value;
    best.parameterRange.push_back(t);
    octaves.add(-floorLog2(t), ratio);
    if (ratio > best.value || best.witness.point.empty()) {
      best.value = ratio;
      best.witness.point = arg;
      best.witness.parameter = t;
    }
  }
  best.octaveSups = octaves.sups();
  best.diverged = plateauDiverged(best.octaveSups);
  std::ostringstream res;
  res << "t >= " << *std::min_element(tSet.begin(), tSet.end()) << ", x-spacing "
      << options.spacing;
  best.note = plateauNote(best, res.str());
  return best;
}

std::vector<double> dyadicTimes(int kMin, int kMax) {
  std::vector<double> out;
  for (int k = kMin; k <= kMax; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

std::vector<double> defaultHolderTimes() {
  std::vector<double> out = dyadicTimes(1, 8);
  for (int k = 2; k <= 8; ++k) out.push_back(1.0 - std::ldexp(1.0, -k));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> defaultLambdas() {
  std::vector<double> out;
  for (int k = 0; k <= 13; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

SeminormEstimate semigroupHolder(const SemigroupSpec& spec, const GridFunction& f, double alpha,
                                 const std::vector<double>& tSet, const MehlerOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("semigroupHolder: alpha must lie in (0,1)");
  if (tSet.empty()) throw InvalidArgument("semigroupHolder: empty tSet");
  for (double t : tSet)
    if (!(t > 0.0 && t < 1.0)) throw InvalidArgument("semigroupHolder: times must lie in (0,1)");
  const double tMax = *std::max_element(tSet.begin(), tSet.end());
  MehlerPropagator propagator(spec, f, tMax, options);
  const Grid& g = f.grid();

  SeminormEstimate best;
  OctaveAccumulator octaves;
  for (double t : tSet) {
    const GridFunction pt = propagator.apply(t);
    double worst = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double d = std::abs(pt[i] - f[i]);
      if (d > worst) {
        worst = d;
        at = i;
      }
    }
    const double ratio = std::pow(t, -alpha) * worst;
    best.parameterRange.push_back(t);
    octaves.add(-floorLog2(t), ratio);
    if (ratio > best.value || best.witness.point.empty()) {
      best.value = ratio;
      const auto x = g.node(at);
      best.witness.point.assign(x.begin(), x.begin() + g.dim());
      best.witness.parameter = t;
    }
  }
  best.octaveSups = octaves.sups();
  best.diverged = plateauDiverged(best.octaveSups);
  std::ostringstream res;
  res << "t >= " << *std::min_element(tSet.begin(), tSet.end()) << ", spacing " << g.maxSpacing();
  best.note = plateauNote(best, res.str());
  return best;
}

SeminormEstimate resolventHolder(const SemigroupSpec& spec, const GridFunction& f, double alpha,
                                 const std::vector<double>& lambdaSet,
                                 const MehlerOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("resolventHolder: alpha must lie in (0,1)");
  if (lambdaSet.empty()) throw InvalidArgument("resolventHolder: empty lambdaSet");
  const ResolventQuadrature reference = ResolventQuadrature::geometric(1.0);
  for (double l : lambdaSet)
    if (!(l >= 1.0) || l > 1.0 / (10.0 * reference.tMin))
      throw InvalidArgument("resolventHolder: lambda must lie in [1, 1/(10 tMin)]");
  const double lMin = *std::min_element(lambdaSet.begin(), lambdaSet.end());
  MehlerPropagator propagator(spec, f, ResolventQuadrature::geometric(lMin).tMax, options);
  const Grid& g = f.grid();

  SeminormEstimate best;
  OctaveAccumulator octaves;
  for (double l : lambdaSet) {
    const GridFunction lr = generatorAction(propagator, l);
    double worst = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::abs(lr[i]) > worst) {
        worst = std::abs(lr[i]);
        at = i;
      }
    }
    const double ratio = std::pow(l, alpha) * worst;
    best.parameterRange.push_back(l);
    octaves.add(floorLog2(l), ratio);
    if (ratio > best.value || best.witness.point.empty()) {
      best.value = ratio;
      const auto x = g.node(at);
      best.witness.point.assign(x.begin(), x.begin() + g.dim());
      best.witness.parameter = l;
    }
  }
  best.octaveSups = octaves.sups();
  best.diverged = plateauDiverged(best.octaveSups);
  std::ostringstream res;
  res << "lambda <= " << *std::max_element(lambdaSet.begin(), lambdaSet.end()) << ", spacing "
      << g.maxSpacing();
  best.note = plateauNote(best, res.str());
  return best;
}

double kFunctionalUpper(const PointFunction& f, const Grid& grid, double xi,
                        const std::vector<double>& scales, Extension extension) {
  if (!(xi > 0.0)) throw InvalidArgument("kFunctionalUpper: xi must be positive");
  if (scales.empty()) throw InvalidArgument("kFunctionalUpper: empty scale set");
  const int dim = grid.dim();
  const GridFunction sampled = gridEval(f, grid);
  double eMax = 0.0;
  for (double e : scales) {
    if (!(e > 0.0)) throw InvalidArgument("kFunctionalUpper: scales must be positive");
    eMax = std::max(eMax, e);
  }
  // Heat flow at time ε² is convolution with N(0, ε²I).
  const SemigroupSpec heat(Matrix::Zero(dim, dim), Matrix::Identity(dim, dim), 1.0);
  MehlerOptions opts;
  opts.extension = extension;
  MehlerPropagator mollifier(heat, sampled, eMax * eMax, opts);

  double best = INFINITY;
  for (double e : scales) {
    const double t = e * e;
    const GridFunction fe = mollifier.apply(t);
    double grad = 0.0;
    for (int a = 0; a < dim; ++a) {
      const int axis[1] = {a};
      grad = std::max(grad, supNorm(mollifier.applyDerivative(t, axis)));
    }
    const double value = maxAbsDifference(sampled, fe) + xi * (supNorm(fe) + grad);
    best = std::min(best, value);
  }
  return best;
}

}  // namespace mehler
