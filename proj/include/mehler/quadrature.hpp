#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace mehler {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rule with `order` points, computed by Newton iteration on P_order.
/// Results are cached per order.
const GaussLegendreRule& gaussLegendre(int order);

namespace detail {

template <class Value, class Fn>
Value glPanel(const Fn& fn, double a, double b, const GaussLegendreRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Value acc = rule.weights[0] * fn(mid + half * rule.nodes[0]);
  for (std::size_t i = 1; i < rule.nodes.size(); ++i) {
    acc = acc + rule.weights[i] * fn(mid + half * rule.nodes[i]);
  }
  return half * acc;
}

template <class Value, class Fn, class Norm>
Value adaptiveStep(const Fn& fn, const Norm& norm, double a, double b, const Value& whole,
                   double absTol, int depth, const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  Value left = glPanel<Value>(fn, a, mid, rule);
  Value right = glPanel<Value>(fn, mid, b, rule);
  Value refined = left + right;
  if (depth <= 0 || norm(refined - whole) <= absTol) return refined;
  return adaptiveStep(fn, norm, a, mid, left, 0.5 * absTol, depth - 1, rule) +
         adaptiveStep(fn, norm, mid, b, right, 0.5 * absTol, depth - 1, rule);
}

}  // namespace detail

/// Adaptive bisection with a 20-point Gauss–Legendre panel rule. Accepts a
/// panel when splitting changes it by at most relTol times the size of the
/// whole-interval estimate (or absTol, whichever is larger).
template <class Value, class Fn, class Norm>
Value integrateAdaptive(const Fn& fn, const Norm& norm, double a, double b, double relTol,
                        double absTol = 0.0) {
  const auto& rule = gaussLegendre(20);
  Value whole = detail::glPanel<Value>(fn, a, b, rule);
  const double tol = std::max(absTol, relTol * norm(whole));
  return detail::adaptiveStep(fn, norm, a, b, whole, tol, 40, rule);
}

inline double integrateAdaptive(const std::function<double(double)>& fn, double a, double b,
                                double relTol, double absTol = 0.0) {
  return integrateAdaptive<double>(fn, [](double v) { return std::abs(v); }, a, b, relTol,
                                   absTol);
}

}  // namespace mehler
