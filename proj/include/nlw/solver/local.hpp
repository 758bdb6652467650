#ifndef NLW_SOLVER_LOCAL_HPP
#define NLW_SOLVER_LOCAL_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "nlw/propagator/picard.hpp"
#include "nlw/solver/config.hpp"

namespace nlw {

struct LocalSolution {
  TimeGrid grid;
  Trajectory trajectory;             // (v, dv/dt) at every node of grid
  int iterations = 0;
  double contraction = 0.0;          // largest ratio of successive increments
  std::vector<double> increments;    // sup_t ||v^(k+1) - v^(k)||_{H^1}
};

/// Fixed point of v -> S(t)(v0, v1) - int_0^t sin((t-s)|D|)/|D| (f + v)^3 ds on
/// [0, T], i.e. (d_t^2 - Delta) v + (f + v)^3 = 0 with data (v0, v1). The
/// forcing f may be absent (plain cubic equation).
///
/// Throws NoContraction when an increment fails to shrink or the tolerance is
/// not reached within cfg.max_picard_iters; NonFiniteField on overflow.
inline LocalSolution local_solve(const StatePair& data, const std::optional<Source>& forcing, double T,
                                 const SolveConfig& cfg) {
  require(T > 0.0, errc::invalid_argument, "local_solve: T must be positive");
  LocalSolution sol;
  sol.grid = TimeGrid(0.0, T, cfg.panels, Quadrature::gauss(cfg.quad_points));
  const TimeGrid& tg = sol.grid;

  std::vector<SpectralField> f_nodes;
  if (forcing) {
    const auto nodes = tg.nodes();
    f_nodes.resize(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k)
      if (detail::needs_source(tg, k)) f_nodes[k] = (*forcing)(nodes[k]);
  }
  const auto* fp = forcing ? &f_nodes : nullptr;

  const Trajectory linear = free_trajectory(data, tg);
  const double scale = 1.0 + sup_over(linear, [](const StatePair& x) { return sobolev_norm(x.u, 1.0); });
  const double tol = cfg.tolerance * scale;

  Trajectory cur = linear;
  for (int k = 1; k <= cfg.max_picard_iters; ++k) {
    Trajectory next = duhamel_map(linear, cur, fp, tg);
    for (const auto& x : next.states)
      if (!x.u.all_finite() || !x.v.all_finite()) fail(errc::non_finite_field, "local_solve: non-finite iterate");
    const double d = sup_h1_distance(next, cur);
    sol.increments.push_back(d);
    cur = std::move(next);
    sol.iterations = k;
    const std::size_t m = sol.increments.size();
    if (m >= 2 && sol.increments[m - 2] > 100.0 * tol) {
      const double ratio = d / sol.increments[m - 2];
      sol.contraction = std::max(sol.contraction, ratio);
      if (ratio >= 1.0)
        fail(errc::no_contraction, "local_solve: increment grew (ratio " + std::to_string(ratio) + "); shrink T");
    }
    if (d <= tol) {
      sol.trajectory = std::move(cur);
      return sol;
    }
  }
  fail(errc::no_contraction, "local_solve: tolerance not reached within the iteration budget; shrink T");
}

/// (1 + ||u0||_{H^1} + ||u1||_{L^2})^{-2}
inline double initial_window(const StatePair& data) {
  const double lambda = 1.0 + sobolev_norm(data.u, 1.0) + sobolev_norm(data.v, 0.0);
  return 1.0 / (lambda * lambda);
}

/// local_solve on the largest window initial_window / 2^j whose measured
/// contraction factor is at most 1/2.
inline LocalSolution local_solve_adaptive(const StatePair& data, const std::optional<Source>& forcing,
                                          const SolveConfig& cfg, int max_halvings = 30) {
  double T = initial_window(data);
  for (int j = 0; j <= max_halvings; ++j, T *= 0.5) {
    try {
      LocalSolution sol = local_solve(data, forcing, T, cfg);
      if (sol.contraction <= 0.5) return sol;
    } catch (const error& e) {
      if (e.code() != errc::no_contraction) throw;
    }
  }
  fail(errc::no_contraction, "local_solve_adaptive: no contracting window found");
}

}  // namespace nlw

#endif
