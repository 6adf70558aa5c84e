#include "mehler/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "mehler/errors.hpp"

namespace mehler {

namespace {
bool isPowerOfTwo(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(std::vector<double> halfWidth, std::vector<int> pointsPerAxis)
    : halfWidth_(std::move(halfWidth)), points_(std::move(pointsPerAxis)) {
  if (halfWidth_.empty() || halfWidth_.size() > 3 || halfWidth_.size() != points_.size())
    throw InvalidArgument("Grid: dimension must be 1, 2 or 3 with one size per axis");
  size_ = 1;
  for (std::size_t i = 0; i < halfWidth_.size(); ++i) {
    if (!(halfWidth_[i] > 0.0) || !std::isfinite(halfWidth_[i]))
      throw InvalidArgument("Grid: halfWidth must be positive and finite");
    if (points_[i] < 8 || !isPowerOfTwo(points_[i]))
      throw InvalidArgument("Grid: pointsPerAxis must be a power of two >= 8, got " +
                            std::to_string(points_[i]));
    size_ *= static_cast<std::size_t>(points_[i]);
  }
}

Grid Grid::cube(int dim, double halfWidth, int pointsPerAxis) {
  if (dim < 1 || dim > 3) throw InvalidArgument("Grid: dimension must be 1, 2 or 3");
  return Grid(std::vector<double>(dim, halfWidth), std::vector<int>(dim, pointsPerAxis));
}

double Grid::maxSpacing() const {
  double h = 0.0;
  for (int a = 0; a < dim(); ++a) h = std::max(h, spacing(a));
  return h;
}

double Grid::minHalfWidth() const {
  return *std::min_element(halfWidth_.begin(), halfWidth_.end());
}

double Grid::cellVolume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= spacing(a);
  return v;
}

std::array<int, 3> Grid::unflatten(std::size_t index) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(index % points_[a]);
    index /= points_[a];
  }
  return idx;
}

std::size_t Grid::flatten(const std::array<int, 3>& idx) const {
  std::size_t index = 0;
  for (int a = 0; a < dim(); ++a) index = index * points_[a] + idx[a];
  return index;
}

std::array<double, 3> Grid::node(std::size_t index) const {
  auto idx = unflatten(index);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim(); ++a) x[a] = coordinate(a, idx[a]);
  return x;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw InvalidArgument("GridFunction: value count does not match grid size");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw NonFiniteValue("GridFunction: non-finite value at node " + std::to_string(i));
  }
}

GridFunction::GridFunction(Grid grid, double constant)
    : grid_(std::move(grid)), values_(grid_.size(), constant) {}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  if (!(grid_ == other.grid_)) throw InvalidArgument("GridFunction: grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  if (!(grid_ == other.grid_)) throw InvalidArgument("GridFunction: grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double c, GridFunction a) { return a *= c; }

GridFunction gridEval(const PointFunction& expr, const Grid& grid) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto x = grid.node(i);
    double v = expr(std::span<const double>(x.data(), grid.dim()));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "gridEval: non-finite value at node " << i << " (";
      for (int a = 0; a < grid.dim(); ++a) msg << (a ? ", " : "") << x[a];
      msg << ")";
      throw NonFiniteValue(msg.str());
    }
    values[i] = v;
  }
  return GridFunction(grid, std::move(values));
}

double maxAbsDifference(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw InvalidArgument("maxAbsDifference: grid mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

std::string formatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void writeCsv(std::ostream& out, const GridFunction& f, const std::vector<std::string>& metadata) {
  const Grid& g = f.grid();
  for (const auto& line : metadata) out << "# " << line << '\n';
  for (int a = 0; a < g.dim(); ++a) out << 'x' << a << ',';
  out << "value\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto x = g.node(i);
    for (int a = 0; a < g.dim(); ++a) out << formatDouble(x[a]) << ',';
    out << formatDouble(f[i]) << '\n';
  }
}

GridFunction readCsv(std::istream& in) {
  std::string line;
  int dim = -1;
  std::vector<std::set<double>> coords;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (dim < 0) {
      dim = static_cast<int>(std::count(line.begin(), line.end(), ','));
      if (dim < 1 || dim > 3) throw InvalidArgument("readCsv: unexpected header '" + line + "'");
      coords.resize(dim);
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    for (int a = 0; a < dim; ++a) {
      std::getline(row, cell, ',');
      coords[a].insert(std::stod(cell));
    }
    std::getline(row, cell);
    values.push_back(std::stod(cell));
  }
  if (dim < 0) throw InvalidArgument("readCsv: no header row");
  std::vector<double> halfWidth;
  std::vector<int> points;
  for (const auto& c : coords) {
    halfWidth.push_back(-*c.begin());
    points.push_back(static_cast<int>(c.size()));
  }
  return GridFunction(Grid(halfWidth, points), std::move(values));
}

void writeFileAtomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace mehler
