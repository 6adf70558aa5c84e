#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mehler/grid.hpp"
#include "mehler/linalg.hpp"

namespace mehler {

/// ψ_t(ξ) = ½∫₀ᵗ ‖Q^{1/2} e^{σAᵀ} ξ‖^{2s} dσ, so that μ_t has characteristic
/// function e^{-ψ_t}. Adaptive Gauss–Legendre in σ, relative error 1e-10.
double symbolExponent(const SemigroupSpec& spec, double t, std::span<const double> xi);

/// Batch evaluation of ψ_t at many frequencies. The σ-integral uses a fixed
/// composite Gauss–Legendre rule with the matrices Q^{1/2}e^{σAᵀ}
/// precomputed; A = 0, dimension one and s = 1 use closed forms of the same
/// integral.
class SymbolEvaluator {
 public:
  SymbolEvaluator(const SemigroupSpec& spec, double t);

  double operator()(const std::array<double, 3>& xi) const;
  double operator()(std::span<const double> xi) const;

  double t() const { return t_; }
  /// Smallest ψ_t on the unit sphere (sampled).
  double minOnUnitSphere() const;
  /// Total mass Γ(S) of the spectral measure of the symmetric (2s)-stable
  /// law, i.e. ψ_t(ξ) = ∫_S |⟨ξ,θ⟩|^{2s} Γ(dθ). Only meaningful for s < 1.
  double spectralMass() const;

 private:
  enum class Mode { DriftFree, Scalar, Quadratic, Quadrature };
  int dim_;
  double t_;
  double s_;
  Mode mode_;
  Matrix qSqrt_;
  double unit_ = 0.0;            // 1-D: ψ_t(1)
  Matrix quadratic_;            // s = 1: ψ = ξᵀ quadratic ξ
  std::vector<Matrix> factors_;  // Q^{1/2} e^{σ_i Aᵀ}
  std::vector<double> weights_;  // ½ w_i
};

/// Analytic description of μ_t outside a bounded region, used to account
/// for the mass and moments a finite box cannot hold.
struct TailModel {
  enum class Kind { Gaussian, Stable };
  Kind kind = Kind::Gaussian;
  int dim = 1;
  double index = 2.0;         ///< 2s
  double spectralMass = 0.0;  ///< Γ(S), stable case
  double scale1d = 0.0;       ///< c with ψ_t(ξ) = |cξ|^{2s} in 1-D
  Matrix covariance;          ///< Q_t, Gaussian case

  static TailModel forMeasure(const SemigroupSpec& spec, double t);

  /// Estimated μ_t(box complement). 1-D stable uses the large-|y| density
  /// series; N-D uses P(‖Y‖ > min R) ≈ C_{2s} Γ(S) R^{-2s}.
  double massOutsideBox(const Grid& grid) const;
  double massOutsideBall(double radius) const;
  /// ∫_{‖y‖>r} ‖y‖^γ μ_t(dy); requires γ < 2s in the stable case.
  double momentOutsideBall(double radius, double gamma) const;
  /// Leading terms of the large-|y| expansion of the 1-D stable density.
  double asymptoticDensity1d(double y) const;
  /// Radius beyond which μ_t carries at most `mass`.
  double radiusForMass(double mass) const;
};

struct DensityOptions {
  double massTolerance = 1e-6;   ///< allowed |mass + tailMass - 1|
  double tailBudget = 1e-2;      ///< largest tail mass the box may leave out
  double aliasThreshold = 1e-12; ///< required e^{-ψ_t} on the Nyquist shell
};

/// Samples of the density g_t of μ_t on a grid.
struct DensityTable {
  Grid grid;
  std::vector<double> values;   ///< clamped at 0 after the mass check
  double mass = 0.0;            ///< Riemann mass held by the box
  double tailMass = 0.0;        ///< analytic mass outside the box
  double minValue = 0.0;        ///< smallest value before clamping
  double symmetryResidual = 0.0;
  double nyquistSymbol = 0.0;   ///< max e^{-ψ_t} on the Nyquist shell
  TailModel tail;

  /// Value at the node closest to the origin.
  double valueAtOrigin() const;
  GridFunction asGridFunction() const { return GridFunction(grid, values); }
};

/// Density of μ_t by discrete Fourier inversion of e^{-ψ_t} on the dual
/// lattice of `grid`. In 1-D with s < 1 the periodisation error of the heavy
/// tails is removed with the asymptotic series of the stable density.
/// Throws AliasRisk if e^{-ψ_t} exceeds aliasThreshold on the Nyquist shell,
/// TailTruncation if the tail mass exceeds tailBudget or the box mass and the
/// tail model disagree by more than massTolerance.
DensityTable densityOf(const SemigroupSpec& spec, double t, const Grid& grid,
                       const DensityOptions& options = {});

/// A cube grid with `points` nodes per axis whose spacing resolves the
/// symbol decay of μ_t (e^{-ψ_t} ≈ e^{-30} at the Nyquist radius).
Grid densityGrid(const SemigroupSpec& spec, double t, int points, double decay = 30.0);

struct MomentEstimate {
  double value = 0.0;
  bool divergent = false;        ///< γ ≥ 2s: the true moment is infinite
  double tailContribution = 0.0; ///< analytic part added for ‖y‖ > box
};

/// ∫‖y‖^γ μ_t(dy): Riemann sum over the inscribed ball plus the analytic tail.
/// For γ ≥ 2s the box value is returned without tail and flagged divergent.
MomentEstimate absoluteMoment(const DensityTable& density, double gamma);

/// ‖∂g_t/∂x_axis‖_{L¹}, derivative taken spectrally (iξ_axis e^{-ψ_t}).
double fominL1Norm(const SemigroupSpec& spec, double t, int axis, const Grid& grid,
                   const DensityOptions& options = {});

/// CSV of the full table; `#` metadata lines include mass diagnostics.
void writeDensityCsv(std::ostream& out, const DensityTable& density,
                     const std::vector<std::string>& metadata = {});
/// Two-column (y, value) slice through the origin along `axis`.
void writeDensitySliceCsv(std::ostream& out, const DensityTable& density, int axis,
                          const std::vector<std::string>& metadata = {});

// ---- stable sampling ---------------------------------------------------

/// Deterministic random stream keyed by (seed, streamIndex).
struct StableSamplerState {
  std::uint64_t seed = 0;
  std::uint64_t streamIndex = 0;
};

/// Random source for the samplers: xoshiro256** seeded from (seed,
/// streamIndex) through SplitMix64, with explicit uniform/normal/exponential
/// transforms so sequences are identical across standard libraries.
class StableSampler {
 public:
  explicit StableSampler(StableSamplerState state);

  double uniform();       ///< (0, 1), never 0
  double exponential();   ///< Exp(1)
  double normal();        ///< N(0, 1)

  /// One-sided stable S with E e^{-λS} = e^{-λ^index}, index ∈ (0,1).
  double positiveStable(double index);

  /// Increment over Δt of the Lévy process with E e^{i⟨ξ,Y⟩} =
  /// e^{-Δt‖Q^{1/2}ξ‖^{2s}/2}, written into `out` (size dim).
  void levyIncrement(const SemigroupSpec& spec, double dt, std::span<double> out);

 private:
  std::array<std::uint64_t, 4> state_;
  bool hasSpare_ = false;
  double spare_ = 0.0;
  std::uint64_t next();
};

/// One draw of the one-sided stable law with Laplace transform e^{-λ^index},
/// by the uniform + exponential (Kanter) representation.
double samplePositiveStable(double index, StableSamplerState state);

/// One Lévy increment. For s < 1 the subordinated Gaussian Q^{1/2}·√(2S)·G
/// with S = (Δt/2)^{1/s}·S₀ and S₀ positive stable of index s; for s = 1 a
/// normal vector with covariance Δt·Q.
Vector sampleLevyIncrement(const SemigroupSpec& spec, double dt, StableSamplerState state);

}  // namespace mehler
