#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mehler/grid.hpp"
#include "mehler/linalg.hpp"
#include "mehler/semigroup.hpp"

namespace mehler {

/// Where a supremum was attained. Pair seminorms fill `node`, `step`, `point`
/// and `offset`; sweep seminorms fill `parameter` (t or λ) and `point`.
struct Witness {
  std::vector<int> node;
  std::vector<int> step;
  std::vector<double> point;
  std::vector<double> offset;
  double parameter = 0.0;
};

struct SeminormEstimate {
  double value = 0.0;
  /// The running supremum still grew by ≥ 5% in the last octave toward the
  /// singular edge of the searched range.
  bool diverged = false;
  Witness witness;
  /// Searched parameter values (‖h‖, t or λ), in search order.
  std::vector<double> parameterRange;
  /// Maximum within each octave, ordered toward the singular edge.
  std::vector<double> octaveSups;
  std::string note;
};

nlohmann::json toJson(const SeminormEstimate& estimate);

/// Plateau rule on octave maxima ordered toward the singular edge.
bool plateauDiverged(const std::vector<double>& octaveSups, double growth = 0.05);

/// Refinement protocol: `refined` repeats `base` with one more octave or half
/// the spacing. Diverged if the refined run fails the plateau rule or its
/// value exceeds the base value by the growth factor.
SeminormEstimate refine(const SeminormEstimate& base, const SeminormEstimate& refined,
                        double growth = 0.05);

double supNorm(const GridFunction& f);

/// sup |f(x+h) - f(x)| / ‖h‖^α over grid pairs with h an integer multiple
/// of an axis step or (dim > 1) a main-diagonal step, 2·spacing ≤ ‖h‖ ≤
/// halfWidth/2, and both points inside the box.
SeminormEstimate holderSeminorm(const GridFunction& f, double alpha);

/// sup |f(x+2h) - 2f(x+h) + f(x)| / ‖h‖ over the same offsets.
SeminormEstimate zygmundSeminorm(const GridFunction& f);

struct FlowOptions {
  double spacing = 1.0 / 64.0;
  double initialHalfWidth = 2.0;
  double plateauTolerance = 0.01;
  std::size_t maxPoints = std::size_t{1} << 22;
};

/// [f]_{Y_α} = sup_{t ∈ tSet} t^{-α} sup_x |f(e^{tA}x) - f(x)|. The inner sup
/// runs over cubes of doubling half-width until it changes by less than
/// plateauTolerance; throws NoPlateau when the point budget runs out first.
SeminormEstimate flowSeminorm(const SemigroupSpec& spec, const PointFunction& f, double alpha,
                              const std::vector<double>& tSet, const FlowOptions& options = {});

/// 2^-kMin, ..., 2^-kMax.
std::vector<double> dyadicTimes(int kMin, int kMax);
/// 2^-1..2^-8 together with 1 - 2^-k for k = 2..8, sorted decreasingly.
std::vector<double> defaultHolderTimes();
/// 2^0..2^13; 2^13 is the largest power of two below 1/(10·tMin).
std::vector<double> defaultLambdas();

/// [f]^{(1)}_α = sup_{t ∈ tSet} t^{-α} ‖P_t f - f‖_∞.
SeminormEstimate semigroupHolder(const SemigroupSpec& spec, const GridFunction& f, double alpha,
                                 const std::vector<double>& tSet,
                                 const MehlerOptions& options = {});

/// [f]^{(3)}_α = sup_{λ ∈ λSet} λ^α ‖L R(λ) f‖_∞.
SeminormEstimate resolventHolder(const SemigroupSpec& spec, const GridFunction& f, double alpha,
                                 const std::vector<double>& lambdaSet,
                                 const MehlerOptions& options = {});

/// Upper bound on K(ξ, f; C_b, C¹_b): min over ε of ‖f - f_ε‖_∞ +
/// ξ(‖f_ε‖_∞ + max_k ‖∂_k f_ε‖_∞), f_ε = f ⋆ N(0, ε²I) computed spectrally
/// on `grid`.
double kFunctionalUpper(const PointFunction& f, const Grid& grid, double xi,
                        const std::vector<double>& scales,
                        Extension extension = Extension::Periodic);

}  // namespace mehler
