#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mehler {

/// A real function on R^N, evaluated pointwise.
using PointFunction = std::function<double(std::span<const double>)>;

/// Uniform tensor grid on the box ∏[-R_i, R_i). Nodes are -R_i + j·h_i for
/// j = 0..n_i-1, so the right endpoint is excluded (periodic convention).
/// Linear node index is row-major: the last axis varies fastest.
class Grid {
 public:
  Grid(std::vector<double> halfWidth, std::vector<int> pointsPerAxis);
  static Grid cube(int dim, double halfWidth, int pointsPerAxis);

  int dim() const { return static_cast<int>(halfWidth_.size()); }
  double halfWidth(int axis) const { return halfWidth_[axis]; }
  int points(int axis) const { return points_[axis]; }
  double spacing(int axis) const { return 2.0 * halfWidth_[axis] / points_[axis]; }
  double maxSpacing() const;
  double minHalfWidth() const;
  double cellVolume() const;
  std::size_t size() const { return size_; }

  double coordinate(int axis, int j) const { return -halfWidth_[axis] + j * spacing(axis); }
  /// Multi-index of a linear index.
  std::array<int, 3> unflatten(std::size_t index) const;
  std::size_t flatten(const std::array<int, 3>& idx) const;
  /// Coordinates of node `index` (first dim() entries used).
  std::array<double, 3> node(std::size_t index) const;

  bool operator==(const Grid& other) const = default;

 private:
  std::vector<double> halfWidth_;
  std::vector<int> points_;
  std::size_t size_ = 0;
};

/// Samples of a bounded function on a Grid. All values are finite.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);
  GridFunction(Grid grid, double constant);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutableValues() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double c);

 private:
  Grid grid_;
  std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double c, GridFunction a);

/// Samples `expr` at every node. Throws NonFiniteValue naming the first
/// offending node.
GridFunction gridEval(const PointFunction& expr, const Grid& grid);

/// max |f - g| over nodes of a shared grid.
double maxAbsDifference(const GridFunction& f, const GridFunction& g);

/// CSV with `#` metadata lines, a header row (x0[,x1,x2],value) and one node
/// per row, every number printed with 17 significant digits.
void writeCsv(std::ostream& out, const GridFunction& f,
              const std::vector<std::string>& metadata = {});

/// Reads the format produced by writeCsv back (grid inferred from columns).
GridFunction readCsv(std::istream& in);

/// "%.17g" formatting.
std::string formatDouble(double v);

/// Writes `contents` to `path` through a temporary file and rename.
void writeFileAtomically(const std::string& path, const std::string& contents);

}  // namespace mehler
