#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mehler/errors.hpp"
#include "mehler/measures.hpp"
#include "support.hpp"

using namespace mehler;

namespace {

double psi(const SemigroupSpec& spec, double t, std::vector<double> xi) { return symbolExponent(spec, t, xi); }

double gaussianDensity(const Matrix& cov, const Vector& y) {
  const int n = static_cast<int>(y.size());
  return std::exp(-0.5 * y.dot(cov.ldlt().solve(y))) / std::sqrt(std::pow(2 * M_PI, n) * cov.determinant());
}

}  // namespace

TEST_CASE("symbol closed forms") {
  // A = 0: ψ_t(ξ) = ½ t ‖Q^{1/2}ξ‖^{2s}.
  const auto free = SemigroupSpec::scalar(0.0, 4.0, 0.75);
  CHECK(psi(free, 2.0, {3.0}) == doctest::Approx(0.5 * 2.0 * std::pow(36.0, 0.75)).epsilon(1e-12));
  // Scalar drift: ψ_t(ξ) = ½ q^s |ξ|^{2s} (e^{2sat} - 1)/(2sa).
  const double a = -0.6, s = 0.7, t = 1.3;
  const auto ou = SemigroupSpec::scalar(a, 2.0, s);
  CHECK(psi(ou, t, {1.5}) ==
        doctest::Approx(0.5 * std::pow(2.0 * 2.25, s) * std::expm1(2 * s * a * t) / (2 * s * a)).epsilon(1e-9));
}

TEST_CASE("property: symbol is even, (2s)-homogeneous and additive along the flow") {
  testing::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(1, 3);
    const double s = rng.uniform(0.3, 1.0);
    const SemigroupSpec spec(rng.matrix(n, 0.8), rng.spd(n), s);
    const double t = rng.uniform(0.1, 1.0), u = rng.uniform(0.1, 1.0), c = rng.uniform(0.2, 3.0);
    Vector xi(n);
    for (int i = 0; i < n; ++i) xi(i) = rng.uniform(-2, 2);
    const std::vector<double> v(xi.data(), xi.data() + n);
    std::vector<double> neg(v), scaled(v);
    for (int i = 0; i < n; ++i) {
      neg[i] = -v[i];
      scaled[i] = c * v[i];
    }
    const double p = psi(spec, t, v);
    CHECK(psi(spec, t, neg) == doctest::Approx(p).epsilon(1e-12));
    CHECK(psi(spec, t, scaled) == doctest::Approx(std::pow(c, 2 * s) * p).epsilon(1e-9));
    // ψ_{t+u}(ξ) = ψ_t(ξ) + ψ_u(e^{tAᵀ}ξ)
    const Vector flowed = matExp(spec.drift().transpose(), t) * xi;
    const double rhs = p + psi(spec, u, std::vector<double>(flowed.data(), flowed.data() + n));
    CHECK(psi(spec, t + u, v) == doctest::Approx(rhs).epsilon(1e-8));
    // The batch evaluator agrees with the adaptive rule.
    SymbolEvaluator eval(spec, t);
    std::array<double, 3> x3{0, 0, 0};
    std::copy(v.begin(), v.end(), x3.begin());
    CHECK(eval(x3) == doctest::Approx(p).epsilon(1e-8));
  }
}

TEST_CASE("Cauchy density oracle") {
  const auto spec = SemigroupSpec::scalar(0.0, 1.0, 0.5);
  const Grid grid = Grid::cube(1, 64.0, 4096);
  const DensityTable d = densityOf(spec, 1.0, grid);
  double err = 0.0;
  for (int j = 0; j < grid.points(0); ++j) {
    const double y = grid.coordinate(0, j);
    err = std::max(err, std::abs(d.values[static_cast<std::size_t>(j)] - 0.5 / (M_PI * (0.25 + y * y))));
  }
  CHECK(err <= 1e-4);
  CHECK(d.valueAtOrigin() == doctest::Approx(2.0 / M_PI).epsilon(1e-4));
  CHECK(d.mass + d.tailMass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Gaussian density matches N(0, Q_t)") {
  Matrix a(2, 2), q(2, 2);
  a << -0.5, 1.0, -1.0, -0.3;
  q << 1.0, 0.2, 0.2, 0.6;
  const SemigroupSpec spec(a, q, 1.0);
  const double t = 0.7;
  const Grid grid = densityGrid(spec, t, 128);
  const DensityTable d = densityOf(spec, t, grid);
  const Matrix cov = gramCovariance(a, q, t);
  double err = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.node(i);
    err = std::max(err, std::abs(d.values[i] - gaussianDensity(cov, Vector{{x[0], x[1]}})));
  }
  CHECK(err <= 1e-8);
}

TEST_CASE("density preconditions") {
  const auto cauchy = SemigroupSpec::scalar(0.0, 1.0, 0.5);
  CHECK_THROWS_AS(densityOf(cauchy, 1.0, Grid::cube(1, 1.0, 64)), TailTruncation);
  const auto gauss = SemigroupSpec::scalar(0.0, 1.0, 1.0);
  CHECK_THROWS_AS(densityOf(gauss, 1e-4, Grid::cube(1, 8.0, 64)), AliasRisk);
}

TEST_CASE("moments: Gaussian second moment and divergent stable moments") {
  const auto gauss = SemigroupSpec::scalar(0.0, 1.0, 1.0);
  const DensityTable g = densityOf(gauss, 0.5, Grid::cube(1, 10.0, 1024));
  CHECK(absoluteMoment(g, 2.0).value == doctest::Approx(0.5).epsilon(1e-8));
  // |y| has a kink at the origin, so the node sum converges at second order only.
  const double exact = std::sqrt(2 * 0.5 / M_PI);
  const double coarse = std::abs(absoluteMoment(g, 1.0).value - exact);
  const double fine =
      std::abs(absoluteMoment(densityOf(gauss, 0.5, Grid::cube(1, 10.0, 2048)), 1.0).value - exact);
  CHECK(coarse < 1e-4);
  CHECK(fine < coarse / 3.5);

  const auto cauchy = SemigroupSpec::scalar(0.0, 1.0, 0.5);
  const DensityTable c = densityOf(cauchy, 1.0, Grid::cube(1, 64.0, 4096));
  CHECK(absoluteMoment(c, 1.0).divergent);
  // E|Y|^{1/2} for Cauchy(scale c) is sqrt(2c).
  CHECK(absoluteMoment(c, 0.5).value == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("Fomin L1 norm: ‖g'‖₁ = 2 g(0) for unimodal symmetric laws") {
  const auto gauss = SemigroupSpec::scalar(0.0, 1.0, 1.0);
  const double t = 0.25;
  const double exact = 2.0 / std::sqrt(2 * M_PI * t);
  const double coarse = std::abs(fominL1Norm(gauss, t, 0, Grid::cube(1, 8.0, 1024)) - exact);
  const double fine = std::abs(fominL1Norm(gauss, t, 0, Grid::cube(1, 8.0, 2048)) - exact);
  CHECK(coarse < 2e-4);
  CHECK(fine < coarse / 3.5);
  const auto cauchy = SemigroupSpec::scalar(0.0, 1.0, 0.5);
  CHECK(fominL1Norm(cauchy, 1.0, 0, Grid::cube(1, 64.0, 4096)) ==
        doctest::Approx(4.0 / M_PI).epsilon(1e-3));
}

TEST_CASE("sampler streams are reproducible and independent") {
  StableSampler a({7, 0}), b({7, 0}), c({7, 1});
  for (int i = 0; i < 10; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    CHECK(u != c.uniform());
  }
}

TEST_CASE("positive stable law: E e^{-S} = e^{-1}") {
  StableSampler rng({3, 0});
  for (double index : {0.3, 0.5, 0.8}) {
    double acc = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) acc += std::exp(-rng.positiveStable(index));
    CHECK(acc / n == doctest::Approx(std::exp(-1.0)).epsilon(0.01));
  }
}

TEST_CASE("Levy increments: Gaussian variance and Cauchy quartiles") {
  StableSampler rng({5, 0});
  const auto gauss = SemigroupSpec::scalar(0.0, 2.0, 1.0);
  double sq = 0.0;
  const int n = 200000;
  double out[1];
  for (int i = 0; i < n; ++i) {
    rng.levyIncrement(gauss, 0.5, out);
    sq += out[0] * out[0];
  }
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));

  // ψ = ½Δt|ξ| is Cauchy with scale Δt/2; its quartiles are ±Δt/2.
  const auto cauchy = SemigroupSpec::scalar(0.0, 1.0, 0.5);
  std::vector<double> draws(n);
  for (auto& d : draws) {
    rng.levyIncrement(cauchy, 1.0, out);
    d = out[0];
  }
  std::sort(draws.begin(), draws.end());
  CHECK(draws[3 * n / 4] == doctest::Approx(0.5).epsilon(0.02));
  CHECK(draws[n / 4] == doctest::Approx(-0.5).epsilon(0.02));
}
