#ifndef NLW_CORE_QUADRATURE_HPP
#define NLW_CORE_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "nlw/core/error.hpp"

namespace nlw {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Nodes by Newton iteration on P_k from Chebyshev initial guesses.
inline GaussRule gauss_legendre(int points) {
  require(points >= 1 && points <= 64, errc::invalid_argument, "Gauss-Legendre point count must be in [1,64]");
  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const int k = points;
  for (int i = 0; i < (k + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= k; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = k * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[k - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[k - 1 - i] = w;
  }
  if (k % 2 == 1) rule.nodes[k / 2] = 0.0;
  return rule;
}

/// Lagrange basis weights at x for the given nodes.
inline std::vector<double> lagrange_weights(std::span<const double> nodes, double x) {
  std::vector<double> w(nodes.size(), 1.0);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (i != j) w[i] *= (x - nodes[j]) / (nodes[i] - nodes[j]);
  return w;
}

/// Trapezoid integral of uniformly spaced samples.
inline double trapezoid(std::span<const double> y, double h) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

/// Cumulative trapezoid over a (possibly non-uniform) grid; out[0] = 0.
inline std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> y) {
  require(t.size() == y.size(), errc::dimension_mismatch, "cumulative_trapezoid: size mismatch");
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return out;
}

}  // namespace nlw

#endif
