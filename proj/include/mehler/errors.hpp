#pragma once

#include <stdexcept>
#include <string>

namespace mehler {

/// Invalid arguments or configuration (bad shapes, out-of-range parameters).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base class of the numerical precondition failures. `name()` is the stable
/// identifier the CLI prints on the diagnostic stream.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// The box does not hold enough of the measure; enlarge halfWidth.
class TailTruncation : public NumericalError {
 public:
  explicit TailTruncation(const std::string& what) : NumericalError("TailTruncation", what) {}
};

/// The symbol has not decayed at the Nyquist frequency; refine the grid.
class AliasRisk : public NumericalError {
 public:
  explicit AliasRisk(const std::string& what) : NumericalError("AliasRisk", what) {}
};

/// The flowed box e^{tA}·box needs a working grid beyond the point budget.
class DomainEscape : public NumericalError {
 public:
  explicit DomainEscape(const std::string& what) : NumericalError("DomainEscape", what) {}
};

/// The smoothing scale of P_t is not resolved by the grid.
class UnderResolved : public NumericalError {
 public:
  explicit UnderResolved(const std::string& what) : NumericalError("UnderResolved", what) {}
};

/// Adaptive domain enlargement failed to stabilise a supremum.
class NoPlateau : public NumericalError {
 public:
  explicit NoPlateau(const std::string& what) : NumericalError("NoPlateau", what) {}
};

/// A sampled function value was NaN or infinite.
class NonFiniteValue : public NumericalError {
 public:
  explicit NonFiniteValue(const std::string& what) : NumericalError("NonFiniteValue", what) {}
};

}  // namespace mehler
