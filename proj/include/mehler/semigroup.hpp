#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mehler/fft.hpp"
#include "mehler/grid.hpp"
#include "mehler/linalg.hpp"
#include "mehler/measures.hpp"

namespace mehler {

/// How a grid function is continued beyond its box.
enum class Extension {
  Constant,  ///< nearest boundary value; the box is padded before convolving
  Periodic,  ///< the box is one period; no padding
};

struct MehlerOptions {
  Extension extension = Extension::Constant;
  double padTailMass = 1e-6;  ///< pad radius aims to leave this much of μ_t outside
  double maxPadFactor = 1.0;  ///< pad_i ≤ maxPadFactor · halfWidth_i
  std::size_t maxWorkingPoints = std::size_t{1} << 22;
};

/// Applies P_t f(x) = ∫ f(e^{tA}x + y) μ_t(dy) to one grid function for any
/// t ∈ [0, tMax]. The convolution u = f ⋆ μ_t is a multiplication by
/// e^{-ψ_t} in Fourier space on a working grid; P_t f(x) = u(e^{tA}x) is
/// then read off by separable cubic interpolation (skipped when A = 0).
///
/// With Extension::Constant the working box is the input box enlarged to
/// cover e^{tA}·box for t ≤ tMax plus a pad for the spread of μ_tMax; it
/// throws DomainEscape when that exceeds maxWorkingPoints.
class MehlerPropagator {
 public:
  MehlerPropagator(const SemigroupSpec& spec, const GridFunction& f, double tMax,
                   MehlerOptions options = {});
  ~MehlerPropagator();
  MehlerPropagator(MehlerPropagator&&) noexcept;

  GridFunction apply(double t) const;
  /// ∂_{x_{a1}}…∂_{x_{ak}} P_t f for the axes listed.
  GridFunction applyDerivative(double t, std::span<const int> axes) const;

  const SemigroupSpec& spec() const { return spec_; }
  const GridFunction& input() const { return input_; }
  const Grid& workingGrid() const;
  double tMax() const { return tMax_; }
  /// Mass of μ_tMax beyond the pad: bounds the error of the constant
  /// extension and of wrap-around (times 2‖f‖_∞).
  double wrapTailMass() const { return wrapTailMass_; }

 private:
  struct Working;
  SemigroupSpec spec_;
  GridFunction input_;
  double tMax_;
  MehlerOptions options_;
  double wrapTailMass_ = 0.0;
  std::unique_ptr<Working> work_;

  GridFunction propagate(double t, std::span<const int> axes) const;
};

/// P_t f; t = 0 returns f.
GridFunction applyMehler(const SemigroupSpec& spec, double t, const GridFunction& f,
                         const MehlerOptions& options = {});

struct MCConfig {
  std::int64_t numPaths = 10000;
  int numSteps = 32;
  std::uint64_t seed = 1;
};

struct MCEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

/// Monte Carlo P_t f(x) = E f(X_t^x) with X_t = e^{tA}x + Σ_j e^{(t-τ_j)A} ΔL_j
/// over numSteps left-point nodes. Path p draws from stream (seed, p), and
/// every point reuses the same noise paths.
std::vector<MCEstimate> applyMehlerMC(const SemigroupSpec& spec, double t, const PointFunction& f,
                                      const std::vector<Vector>& points, const MCConfig& config);

/// Geometric-node rule for ∫₀^∞ e^{-λt} h(t) dt on [tMin, tMax]; the weights
/// include the factor e^{-λt}.
struct ResolventQuadrature {
  double lambda = 1.0;
  std::vector<double> tNodes;
  std::vector<double> weights;
  double tMin = 1e-5;
  double tMax = 40.0;

  /// `nodes` points from tMin to tMaxFactor/λ, trapezoid rule in log t.
  static ResolventQuadrature geometric(double lambda, int nodes = 160, double tMin = 1e-5,
                                       double tMaxFactor = 40.0);
};

/// R(λ)f = f/λ + ∫₀^∞ e^{-λt}(P_t f - f) dt. The part on [0, tMin] is
/// dropped, which is the tMin·f endpoint approximation of ∫₀^{tMin} e^{-λt}P_t f.
GridFunction resolvent(const SemigroupSpec& spec, double lambda, const GridFunction& f,
                       const MehlerOptions& options = {});
/// Same, reusing a propagator whose tMax covers 40/λ.
GridFunction resolvent(const MehlerPropagator& propagator, double lambda);

/// L R(λ) f = λR(λ)f - f, accumulated as λ∫e^{-λt}(P_t f - f)dt.
GridFunction generatorAction(const SemigroupSpec& spec, double lambda, const GridFunction& f,
                             const MehlerOptions& options = {});
GridFunction generatorAction(const MehlerPropagator& propagator, double lambda);

/// ‖D^k P_t f‖_∞ by spectral differentiation; for dim > 1 the maximum over
/// all axis-aligned k-th order partials. Throws UnderResolved unless
/// t^{1/(2s)} ≥ 4·spacing.
double derivativeSup(const SemigroupSpec& spec, double t, const GridFunction& f, int k,
                     const MehlerOptions& options = {});

/// ‖(P_h f - f)/h - (λf - g)‖_∞ with f = R(λ)g, i.e. the defect of the
/// difference quotient at time 0 against Lf = λf - g.
double timeDerivativeResidual(const SemigroupSpec& spec, double lambda, const GridFunction& g,
                              double h = 1e-3, const MehlerOptions& options = {});

}  // namespace mehler
