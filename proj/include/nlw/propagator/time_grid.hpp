#ifndef NLW_PROPAGATOR_TIME_GRID_HPP
#define NLW_PROPAGATOR_TIME_GRID_HPP

#include <string>
#include <vector>

#include "nlw/core/quadrature.hpp"

namespace nlw {

/// Composite time quadrature.
struct Quadrature {
  enum class Kind { gauss_legendre, trapezoid };
  Kind kind = Kind::gauss_legendre;
  int points = 2;  // per panel, Gauss-Legendre only

  static Quadrature gauss(int points) { return {Kind::gauss_legendre, points}; }
  static Quadrature trapezoid() { return {Kind::trapezoid, 2}; }

  /// Nominal convergence order of the composite rule.
  int order() const noexcept { return kind == Kind::trapezoid ? 2 : 2 * points; }

  std::string name() const {
    return kind == Kind::trapezoid ? "trapezoid" : "gauss-legendre-" + std::to_string(points);
  }
};

/// [t0, t1] split into `steps` equal panels.
///
/// Evaluation nodes are every panel endpoint plus, for Gauss-Legendre, the
/// interior Gauss nodes of each panel, in increasing order. Panel j owns
/// nodes [j*stride, (j+1)*stride] with stride = points + 1 (Gauss) or 1.
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 1;
  Quadrature quad{};

  TimeGrid() = default;
  TimeGrid(double a, double b, int n, Quadrature q = {}) : t0(a), t1(b), steps(n), quad(q) { validate(); }

  void validate() const {
    require(t1 > t0, errc::invalid_argument, "time grid needs t1 > t0");
    require(steps >= 1, errc::invalid_argument, "time grid needs at least one step");
    require(quad.kind == Quadrature::Kind::trapezoid || (quad.points >= 1 && quad.points <= 64), errc::invalid_argument,
            "bad Gauss-Legendre point count");
  }

  double step() const noexcept { return (t1 - t0) / steps; }
  double panel_start(int j) const noexcept { return j == steps ? t1 : t0 + j * step(); }

  int interior() const noexcept { return quad.kind == Quadrature::Kind::trapezoid ? 0 : quad.points; }
  int stride() const noexcept { return interior() + 1; }
  std::size_t node_count() const noexcept { return static_cast<std::size_t>(steps) * stride() + 1; }
  std::size_t endpoint_node(int j) const noexcept { return static_cast<std::size_t>(j) * stride(); }

  /// Quadrature nodes and weights of panel j (absolute times).
  void panel_rule(int j, std::vector<double>& taus, std::vector<double>& weights) const {
    const double a = panel_start(j), b = panel_start(j + 1), h = b - a;
    taus.clear();
    weights.clear();
    if (quad.kind == Quadrature::Kind::trapezoid) {
      taus = {a, b};
      weights = {0.5 * h, 0.5 * h};
      return;
    }
    const GaussRule r = gauss_legendre(quad.points);
    for (std::size_t q = 0; q < r.size(); ++q) {
      taus.push_back(a + 0.5 * h * (r.nodes[q] + 1.0));
      weights.push_back(0.5 * h * r.weights[q]);
    }
  }

  std::vector<double> nodes() const {
    std::vector<double> out;
    out.reserve(node_count());
    std::vector<double> taus, w;
    for (int j = 0; j < steps; ++j) {
      out.push_back(panel_start(j));
      if (interior()) {
        panel_rule(j, taus, w);
        out.insert(out.end(), taus.begin(), taus.end());
      }
    }
    out.push_back(t1);
    return out;
  }
};

}  // namespace nlw

#endif
