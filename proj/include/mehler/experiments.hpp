#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mehler/grid.hpp"
#include "mehler/linalg.hpp"
#include "mehler/semigroup.hpp"

namespace mehler {

// ---- test functions ----------------------------------------------------------

enum class FunctionKind { Constant, Weierstrass, Cosine, GaussianBump, Step, RationalDecay, AbsSine };

/// Bounded test inputs, all depending on x₁ only except the bump and the
/// rational decay, which are radial.
struct TestFunctionFamily {
  FunctionKind kind = FunctionKind::Cosine;
  double beta = 0.5;    ///< Weierstrass smoothness
  int base = 2;         ///< Weierstrass lacunary base a
  int terms = 18;       ///< Weierstrass truncation K (sum over k = 0..K)
  double constant = 1.0;

  /// W_β(x) = Σ_{k=0}^{K} a^{-βk} cos(a^k x₁), with K raised until the
  /// truncation tail a^{-βK}/(1 - a^{-β}) is at most 1e-2.
  static TestFunctionFamily weierstrass(double beta, int base = 2, int terms = 18);
  static TestFunctionFamily of(FunctionKind kind);
  /// Names: const<c>, cos, bump, step, rational, abssin, weierstrass:<β>.
  static TestFunctionFamily parse(const std::string& name);

  std::string name() const;
  PointFunction expr() const;
  double truncationTail() const;
};

/// A smooth function of one variable with closed-form first and second
/// derivatives.
struct SmoothFunction {
  std::string name;
  std::function<double(double)> f, df, d2f;
};

/// The Landau test family (at least 20 members).
std::vector<SmoothFunction> landauFamily();

// ---- scaling fits ------------------------------------------------------------

struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;  ///< log of the prefactor
  double rSquared = 0.0;
  double stdError = 0.0;   ///< standard error of the exponent
  bool degenerate = false; ///< fewer than 4 samples: no error estimate is meaningful
  std::vector<std::pair<double, double>> pointsUsed;  ///< (log t, log value)
};

/// Ordinary least squares of log value on log t. Needs at least two distinct
/// t; rejects nonpositive values.
ScalingFit fitScaling(const std::vector<std::pair<double, double>>& samples);

nlohmann::json toJson(const ScalingFit& fit);

// ---- reports -------------------------------------------------------------------

enum class Verdict { Pass, Fail, Inconclusive };
std::string toString(Verdict v);

/// One asserted comparison of a measured quantity.
struct Check {
  enum class Bound { Within, AtMost, AtLeast };
  std::string label;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::Within;

  bool passed() const;
};

Check within(std::string label, double measured, double expected, double tolerance);
Check atMost(std::string label, double measured, double ceiling);
Check atLeast(std::string label, double measured, double floor);
Check holds(std::string label, bool condition);

struct ExperimentReport {
  std::string name;
  int criterion = 0;
  std::optional<SemigroupSpec> spec;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<ScalingFit> fit;
  nlohmann::json estimates = nlohmann::json::object();
  std::vector<Check> checks;
  Verdict verdict = Verdict::Inconclusive;
  std::string error;  ///< precondition failure behind an inconclusive verdict
  double runtimeSeconds = 0.0;

  /// Verdict from the checks: pass iff every check passes.
  void conclude();
  /// Headline check: the first failing one, else the first one.
  Check headline() const;
};

/// JSON record with stable key order. Runtime is only included on request
/// so that repeated runs produce identical bytes.
nlohmann::json toJson(const ExperimentReport& report, bool includeRuntime = false);
nlohmann::json toJson(const SemigroupSpec& spec);

/// Named numeric parameters with defaults; every value read is recorded so
/// reports list exactly what was used.
class Parameters {
 public:
  Parameters() = default;
  explicit Parameters(std::map<std::string, std::string> overrides);

  double number(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback);
  const nlohmann::json& used() const { return used_; }
  /// Keys given as overrides but never read.
  std::vector<std::string> unused() const;

 private:
  std::map<std::string, std::string> overrides_;
  nlohmann::json used_ = nlohmann::json::object();
};

// ---- experiment procedures ---------------------------------------------------

/// Exponent of ∫‖y‖^γ g_t dy in t, expected γ/(2s).
ExperimentReport momentScalingExperiment(const SemigroupSpec& spec, double gamma,
                                         const std::vector<double>& tSet, int points);

/// Exponent of ‖D^k P_t f‖_∞ in t; at least -k/(2s) - 0.05, and for the step
/// input exactly -k/(2s) ± 0.05.
ExperimentReport smoothingExperiment(const SemigroupSpec& spec, const TestFunctionFamily& f, int k,
                                     const std::vector<double>& tSet, const Grid& grid);

/// Exponent of ‖∂_axis g_t‖_{L¹} in t, expected -1/(2s).
ExperimentReport fominScalingExperiment(const SemigroupSpec& spec, int axis,
                                        const std::vector<double>& tSet, int points,
                                        double tolerance = 0.05);

/// Exponent of ‖P_t W_β - W_β‖_∞ (A = 0), expected β/(2s) ± 0.07, plus the
/// semigroupHolder divergence verdicts at β/(2s) ± 0.15 under refinement.
ExperimentReport holderCharacterizationExperiment(const SemigroupSpec& spec, double beta,
                                                  const std::vector<double>& tSet, int points);

/// A = [1]: ‖P_t cos - cos‖_∞ ≥ 1 on every t, and the control
/// ‖P_t f - f‖_∞ ≤ 0.2 t^{1/2} for f = 1/(1+x²).
ExperimentReport strongContinuityCounterexample(const SemigroupSpec& spec,
                                                const std::vector<double>& tSet,
                                                double spacing = 0.125);

/// ‖Df‖²/(‖f‖‖D²f‖) ≤ 4.1 over the family.
ExperimentReport landauInequalityCheck(const std::vector<SmoothFunction>& family);

/// [f]^{(3)}_α ≤ Γ(α+1)[f]^{(1)}_α · 1.05 on every input.
ExperimentReport gammaFactorExperiment(const SemigroupSpec& spec,
                                       const std::vector<GridFunction>& inputs, double alpha,
                                       const MehlerOptions& options = {});

// ---- acceptance suite -----------------------------------------------------

struct SuiteContext {
  bool quick = false;
  std::uint64_t seed = 1;
  /// Per-experiment parameter overrides, keyed by experiment name.
  std::map<std::string, std::map<std::string, std::string>> overrides;
};

struct SuiteEntry {
  std::string name;
  int criterion = 0;
  std::string description;
  std::function<ExperimentReport(const SuiteContext&, Parameters&)> run;
};

const std::vector<SuiteEntry>& acceptanceSuite();
const SuiteEntry* findExperiment(const std::string& name);

/// Runs one entry with timing. Numerical precondition errors turn into an
/// inconclusive verdict; invalid arguments propagate.
ExperimentReport runExperiment(const SuiteEntry& entry, const SuiteContext& context);

/// Summary CSV: name, criterion, expected, measured, tolerance, verdict.
std::string summaryCsv(const std::vector<ExperimentReport>& reports,
                       const std::vector<std::string>& metadata = {});
/// Runtime per experiment, kept apart from the deterministic outputs.
std::string timingCsv(const std::vector<ExperimentReport>& reports,
                      const std::vector<std::string>& metadata = {});

}  // namespace mehler
