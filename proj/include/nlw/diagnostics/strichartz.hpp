#ifndef NLW_DIAGNOSTICS_STRICHARTZ_HPP
#define NLW_DIAGNOSTICS_STRICHARTZ_HPP

#include <cmath>
#include <vector>

#include "nlw/propagator/free.hpp"
#include "nlw/spectral/norms.hpp"

namespace nlw {

struct StrichartzOptions {
  int nodes_per_unit_time = 64;
  double refine_tolerance = 1e-3;
  int max_nodes = 1 << 14;
};

/// 2 < p <= inf with 1/p + 1/q = 1/2 (q = 2p/(p-2), q = 2 for p = inf).
inline void check_admissible(double p, double q) {
  const bool p_ok = std::isinf(p) || p > 2.0;
  const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
  const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
  require(p_ok && q >= 2.0 && std::abs(ip + iq - 0.5) <= 1e-12, errc::inadmissible_pair,
          "Strichartz pair must satisfy 2 < p <= inf and 1/p + 1/q = 1/2");
}

/// ||S(t)(u0,u1)||_{L^p([0,T]; L^q)} by the trapezoid rule in t, doubling the
/// node count until the value moves by less than refine_tolerance.
inline double strichartz_lhs(const StatePair& x, double p, double q, double T = 1.0, StrichartzOptions opt = {}) {
  require(T > 0.0, errc::invalid_argument, "strichartz: T must be positive");
  const auto value = [&](double t) { return lebesgue_norm(free_evolve(x, t).u, q); };
  int n = std::max(1, static_cast<int>(std::ceil(opt.nodes_per_unit_time * T)));
  std::vector<double> samples(n + 1);
  for (int j = 0; j <= n; ++j) samples[j] = value(T * j / n);

  const auto reduce = [&](const std::vector<double>& f) {
    const int m = static_cast<int>(f.size()) - 1;
    if (std::isinf(p)) {
      double mx = 0.0;
      for (double y : f) mx = std::max(mx, y);
      return mx;
    }
    double acc = 0.5 * (std::pow(f.front(), p) + std::pow(f.back(), p));
    for (int j = 1; j < m; ++j) acc += std::pow(f[j], p);
    return std::pow(acc * T / m, 1.0 / p);
  };

  double current = reduce(samples);
  while (2 * n <= opt.max_nodes) {
    std::vector<double> finer(2 * n + 1);
    for (int j = 0; j <= n; ++j) finer[2 * j] = samples[j];
    for (int j = 0; j < n; ++j) finer[2 * j + 1] = value(T * (2 * j + 1) / (2 * n));
    samples = std::move(finer);
    n *= 2;
    const double next = reduce(samples);
    const bool done = std::abs(next - current) <= opt.refine_tolerance * std::abs(next);
    current = next;
    if (done) break;
  }
  return current;
}

/// LHS / (||u0||_{H^{2/p}} + ||u1||_{H^{2/p-1}}).
inline double strichartz_ratio(const StatePair& x, double p, double q, double T = 1.0, StrichartzOptions opt = {}) {
  check_admissible(p, q);
  const double s = std::isinf(p) ? 0.0 : 2.0 / p;
  const double rhs = sobolev_norm(x.u, s) + sobolev_norm(x.v, s - 1.0);
  require(rhs > 0.0, errc::invalid_argument, "strichartz_ratio: zero data");
  return strichartz_lhs(x, p, q, T, opt) / rhs;
}

}  // namespace nlw

#endif
