#include <cmath>
#include <numbers>

#include "mehler/errors.hpp"
#include "mehler/measures.hpp"

namespace mehler {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

StableSampler::StableSampler(StableSamplerState state) {
  std::uint64_t a = state.seed;
  std::uint64_t b = state.streamIndex ^ 0xd1b54a32d192ed03ULL;
  std::uint64_t mix = splitmix64(a) ^ rotl(splitmix64(b), 17);
  for (auto& word : state_) word = splitmix64(mix);
}

std::uint64_t StableSampler::next() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double StableSampler::uniform() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double StableSampler::exponential() { return -std::log(uniform()); }

double StableSampler::normal() {
  if (hasSpare_) {
    hasSpare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double phi = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(phi);
  hasSpare_ = true;
  return r * std::cos(phi);
}

double StableSampler::positiveStable(double index) {
  if (!(index > 0.0 && index < 1.0))
    throw InvalidArgument("positiveStable: index must lie in (0, 1)");
  const double u = std::numbers::pi * uniform();
  const double e = exponential();
  const double a = std::sin(index * u) / std::pow(std::sin(u), 1.0 / index);
  const double b = std::pow(std::sin((1.0 - index) * u) / e, (1.0 - index) / index);
  return a * b;
}

void StableSampler::levyIncrement(const SemigroupSpec& spec, double dt, std::span<double> out) {
  if (!(dt > 0.0)) throw InvalidArgument("levyIncrement: dt must be positive");
  const int n = spec.dim();
  double g[3];
  for (int i = 0; i < n; ++i) g[i] = normal();
  double amplitude;
  if (spec.gaussian()) {
    amplitude = std::sqrt(dt);
  } else {
    const double s = spec.s();
    const double subordinator = std::pow(0.5 * dt, 1.0 / s) * positiveStable(s);
    amplitude = std::sqrt(2.0 * subordinator);
  }
  const Matrix& root = spec.diffusionSqrt();
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += root(i, j) * g[j];
    out[i] = amplitude * acc;
  }
}

double samplePositiveStable(double index, StableSamplerState state) {
  StableSampler sampler(state);
  return sampler.positiveStable(index);
}

Vector sampleLevyIncrement(const SemigroupSpec& spec, double dt, StableSamplerState state) {
  StableSampler sampler(state);
  Vector out(spec.dim());
  sampler.levyIncrement(spec, dt, std::span<double>(out.data(), spec.dim()));
  return out;
}

}  // namespace mehler
