#include <doctest.h>

#include <cmath>

#include "mehler/errors.hpp"
#include "mehler/seminorms.hpp"

using namespace mehler;

TEST_CASE("plateau rule") {
  CHECK_FALSE(plateauDiverged({1.0}));
  CHECK_FALSE(plateauDiverged({1.0, 1.04}));
  CHECK(plateauDiverged({1.0, 1.05}));
  CHECK_FALSE(plateauDiverged({1.0, 2.0, 1.5}));
  CHECK(plateauDiverged({1.0, 2.0, 2.2}));
  CHECK_FALSE(plateauDiverged({0.0, 0.0}));
}

TEST_CASE("refinement protocol") {
  SeminormEstimate base, refined;
  base.value = 1.0;
  refined.value = 1.02;
  CHECK_FALSE(refine(base, refined).diverged);
  refined.value = 1.06;
  CHECK(refine(base, refined).diverged);
  refined.value = 1.0;
  refined.diverged = true;
  CHECK(refine(base, refined).diverged);
}

TEST_CASE("parameter sets") {
  const auto times = defaultHolderTimes();
  CHECK(times.size() == 15);
  CHECK(std::is_sorted(times.rbegin(), times.rend()));
  CHECK(times.front() == 1.0 - std::ldexp(1.0, -8));
  CHECK(times.back() == std::ldexp(1.0, -8));
  const auto lambdas = defaultLambdas();
  CHECK(lambdas.size() == 14);
  CHECK(lambdas.back() == 8192.0);
  CHECK(dyadicTimes(1, 3) == std::vector<double>{0.5, 0.25, 0.125});
}

TEST_CASE("Zygmund seminorm of affine functions vanishes") {
  const Grid g1 = Grid::cube(1, 2.0, 256);
  CHECK(zygmundSeminorm(gridEval([](std::span<const double> x) { return 3.0 * x[0] - 1.0; }, g1)).value <=
        1e-12);
  const Grid g2 = Grid::cube(2, 2.0, 64);
  const auto e =
      zygmundSeminorm(gridEval([](std::span<const double> x) { return 0.5 * x[0] - 2.0 * x[1] + 0.25; }, g2));
  CHECK(e.value <= 1e-12);
}

TEST_CASE("Holder seminorm oracles") {
  const Grid g = Grid::cube(1, 4.0, 1024);
  CHECK_THROWS_AS(holderSeminorm(GridFunction(g, 0.0), 1.0), InvalidArgument);
  // |x|^{1/2} is exactly 1/2-Hölder with constant 1, attained at the origin.
  const auto sq = holderSeminorm(gridEval([](std::span<const double> x) { return std::sqrt(std::abs(x[0])); }, g), 0.5);
  CHECK(sq.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sq.witness.point.size() == 1);
  CHECK_FALSE(sq.diverged);
  // With α above the true exponent the supremum grows toward small offsets.
  CHECK(holderSeminorm(gridEval([](std::span<const double> x) { return std::sqrt(std::abs(x[0])); }, g), 0.8)
            .diverged);
}

TEST_CASE("flow seminorm vanishes without drift and scales with it") {
  auto cosine = [](std::span<const double> x) { return std::cos(x[0]); };
  const auto none = SemigroupSpec::scalar(0.0, 1.0, 0.5);
  CHECK(flowSeminorm(none, cosine, 0.5, dyadicTimes(1, 4)).value == 0.0);
  // |f(e^{-t}x) - f(x)| ≈ t|x f'(x)|, so the quotient at α = 1/2 stays below 1.
  auto bump = [](std::span<const double> x) { return std::exp(-x[0] * x[0]); };
  const auto ou = SemigroupSpec::scalar(-1.0, 1.0, 0.5);
  const auto e = flowSeminorm(ou, bump, 0.5, dyadicTimes(1, 6));
  CHECK(e.value > 0.0);
  CHECK(e.value < 1.0);
}

TEST_CASE("semigroup Hölder seminorm of cos") {
  const Grid g = Grid::cube(1, M_PI, 1024);
  MehlerOptions o;
  o.extension = Extension::Periodic;
  const auto spec = SemigroupSpec::scalar(0.0, 1.0, 1.0);
  const auto e = semigroupHolder(spec, gridEval([](std::span<const double> x) { return std::cos(x[0]); }, g), 0.5,
                                 defaultHolderTimes(), o);
  // t^{-1/2}(1 - e^{-t/2}) increases on (0, 1), so the largest time wins.
  const double tMax = 1.0 - std::ldexp(1.0, -8);
  CHECK(e.value == doctest::Approx(-std::expm1(-tMax / 2) / std::sqrt(tMax)).epsilon(1e-9));
  CHECK(e.witness.parameter == tMax);
  CHECK_FALSE(e.diverged);
  CHECK_THROWS_AS(semigroupHolder(spec, GridFunction(g, 1.0), 0.5, {0.5, 1.5}, o), InvalidArgument);
}

TEST_CASE("K-functional bound is increasing in ξ and below ‖f‖") {
  const Grid g = Grid::cube(1, M_PI, 2048);
  auto f = [](std::span<const double> x) { return std::cos(3 * x[0]); };
  std::vector<double> scales;
  for (int k = -10; k <= 2; ++k) scales.push_back(std::ldexp(1.0, k));
  double last = 0.0;
  for (double xi : {1e-3, 1e-2, 1e-1}) {
    const double k = kFunctionalUpper(f, g, xi, scales);
    CHECK(k >= last);
    CHECK(k <= 1.0 + 1e-9);
    // The split a = 0, b = f gives 4ξ; the mollifier adds O(ε²) at the finest scale.
    CHECK(k <= 4.0 * xi + 1e-5);
    last = k;
  }
}
