#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mehler/errors.hpp"
#include "mehler/grid.hpp"
#include "mehler/linalg.hpp"

namespace mehler {

/// A configuration value failed validation; `field()` is "section.key".
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string field, const std::string& message)
      : InvalidArgument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Everything a run depends on. Read from an INI file:
///
///   [spec]      drift, diffusion (row-major, N² numbers), s
///   [grid]      halfWidth, points (one value, or one per axis)
///   [run]       seed, outputDir, experiments (comma list or "all")
///   [experiment.<name>]  key = value parameter overrides
struct RunConfig {
  std::vector<double> drift{0.0};
  std::vector<double> diffusion{1.0};
  double s = 0.5;
  std::vector<double> halfWidth{8.0};
  std::vector<int> points{1024};
  std::uint64_t seed = 1;
  std::string outputDir = "mehler-out";
  std::vector<std::string> experiments;  ///< empty: the whole suite
  std::map<std::string, std::map<std::string, std::string>> overrides;

  int dim() const;
  SemigroupSpec spec() const;
  Grid grid() const;

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  /// Normalised text of every field except outputDir, which does not
  /// affect results.
  std::string canonical() const;
};

/// Environment variable that overrides [run] outputDir.
inline constexpr const char* kOutputDirVariable = "MEHLER_OUTPUT_DIR";

RunConfig parseConfig(std::istream& in, const std::string& source = "<config>");
RunConfig loadConfig(const std::string& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);
/// Sixteen lowercase hex digits.
std::string hashHex(std::uint64_t hash);

/// Comma- or whitespace-separated numbers.
std::vector<double> parseNumberList(const std::string& text, const std::string& field);

}  // namespace mehler
