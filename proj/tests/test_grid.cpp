#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "mehler/errors.hpp"
#include "mehler/fft.hpp"
#include "mehler/grid.hpp"
#include "support.hpp"

using namespace mehler;

TEST_CASE("grid nodes exclude the right endpoint") {
  const Grid g = Grid::cube(1, 2.0, 8);
  CHECK(g.spacing(0) == 0.5);
  CHECK(g.coordinate(0, 0) == -2.0);
  CHECK(g.coordinate(0, 7) == 1.5);
  CHECK(g.size() == 8);
}

TEST_CASE("grid rejects bad shapes") {
  CHECK_THROWS_AS(Grid({1.0}, {12}), InvalidArgument);
  CHECK_THROWS_AS(Grid({1.0, 1.0}, {8}), InvalidArgument);
  CHECK_THROWS_AS(Grid({-1.0}, {8}), InvalidArgument);
  CHECK_THROWS_AS(Grid({1, 1, 1, 1}, {8, 8, 8, 8}), InvalidArgument);
}

TEST_CASE("property: flatten inverts unflatten, last axis fastest") {
  const Grid g({1.0, 2.0, 3.0}, {8, 16, 8});
  for (std::size_t i = 0; i < g.size(); i += 7) CHECK(g.flatten(g.unflatten(i)) == i);
  CHECK(g.flatten({0, 0, 1}) == 1);
  CHECK(g.flatten({1, 0, 0}) == 128);
  const auto x = g.node(g.flatten({1, 2, 3}));
  CHECK(x[0] == g.coordinate(0, 1));
  CHECK(x[2] == g.coordinate(2, 3));
}

TEST_CASE("gridEval names non-finite samples") {
  const Grid g = Grid::cube(1, 1.0, 8);
  CHECK_THROWS_AS(gridEval([](std::span<const double> x) { return 1.0 / x[0]; }, g), NonFiniteValue);
}

TEST_CASE("CSV round trip is lossless") {
  testing::Rng rng(21);
  const Grid g({1.5, 0.75}, {8, 16});
  std::vector<double> v(g.size());
  for (auto& x : v) x = rng.uniform(-1, 1) * std::pow(10.0, rng.integer(-30, 30));
  const GridFunction f(g, v);
  std::stringstream s;
  writeCsv(s, f, {"config-hash = 0"});
  CHECK(s.str().rfind("# config-hash = 0\nx0,x1,value\n", 0) == 0);
  const GridFunction back = readCsv(s);
  CHECK(back.grid() == g);
  CHECK(back.values() == v);
}

TEST_CASE("formatDouble uses 17 significant digits") {
  CHECK(formatDouble(0.1) == "0.10000000000000001");
  CHECK(std::stod(formatDouble(M_PI)) == M_PI);
}

TEST_CASE("atomic write replaces the file") {
  const auto path = (std::filesystem::temp_directory_path() / "mehler-atomic-test.txt").string();
  writeFileAtomically(path, "first");
  writeFileAtomically(path, "second");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == "second");
  std::filesystem::remove(path);
}

TEST_CASE("grid function arithmetic") {
  const Grid g = Grid::cube(1, 1.0, 8);
  GridFunction a(g, 2.0), b(g, 0.5);
  CHECK(maxAbsDifference(a - b, GridFunction(g, 1.5)) == 0.0);
  CHECK(maxAbsDifference(3.0 * b, GridFunction(g, 1.5)) == 0.0);
  CHECK_THROWS_AS(a += GridFunction(Grid::cube(1, 2.0, 8), 1.0), InvalidArgument);
}

TEST_CASE("FFT round trip and frequency layout") {
  testing::Rng rng(22);
  const Grid g({M_PI, 2.0}, {16, 8});
  RealFft fft(g);
  std::vector<double> v(g.size());
  for (auto& x : v) x = rng.uniform(-1, 1);
  const auto back = fft.inverse(fft.forward(v));
  double err = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(back[i] - v[i]));
  CHECK(err < 1e-14);
  CHECK(fft.spectrumSize() == 16 * 5);
  // Mode m on axis 0 has ξ = π m / R.
  const Frequency f = fft.frequency(5 * 3);
  CHECK(f.m[0] == 3);
  CHECK(f.xi[0] == doctest::Approx(3.0));
  const Frequency ny = fft.frequency(5 * 8);
  CHECK(ny.m[0] == -8);
  CHECK(ny.onNyquistShell());
}
