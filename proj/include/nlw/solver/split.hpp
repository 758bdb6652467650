#ifndef NLW_SOLVER_SPLIT_HPP
#define NLW_SOLVER_SPLIT_HPP

#include <algorithm>
#include <cmath>

#include "nlw/propagator/free.hpp"
#include "nlw/solver/config.hpp"
#include "nlw/spectral/symbol.hpp"
#include "nlw/spectral/transform.hpp"

namespace nlw {

namespace detail {

inline int step_count(double T, double dt) {
  require(dt > 0.0 && std::isfinite(dt), errc::invalid_argument, "dt must be positive");
  require(std::isfinite(T), errc::invalid_argument, "final time must be finite");
  return std::max(1, static_cast<int>(std::ceil(std::abs(T) / dt - 1e-9)));
}

inline void check_finite(const StatePair& x, double t) {
  if (!x.u.all_finite() || !x.v.all_finite())
    fail(errc::non_finite_field, "non-finite field at t = " + std::to_string(t));
}

// Strang splitting kick-drift-kick. `force(u)` returns the nonlinear term g
// of v' = Delta u - g(u); the kick v -= h g(u) solves the u-frozen substep
// exactly and the drift is the exact linear flow.
template <class Force>
StatePair strang(StatePair x, double T, const SolveConfig& cfg, Force&& force, const StepObserver& obs,
                 int observe_every) {
  const int n = step_count(T, cfg.dt);
  const double h = T / n;
  observe_every = std::max(1, observe_every);
  if (obs) obs(0.0, x);
  if (T == 0.0) return x;
  SpectralField f;
  if (cfg.nonlinear) f = force(x.u);
  for (int k = 1; k <= n; ++k) {
    if (cfg.nonlinear) x.v.axpy(-0.5 * h, f);
    x = free_evolve(x, h);
    if (cfg.nonlinear) {
      f = force(x.u);
      x.v.axpy(-0.5 * h, f);
    }
    check_finite(x, k * h);
    if (obs && (k % observe_every == 0 || k == n)) obs(k == n ? T : k * h, x);
  }
  return x;
}

}  // namespace detail

/// Global evolution of u_tt - Delta u + u^3 = 0 by Strang splitting.
/// The cube is dealiased on the field's physical grid.
inline StatePair evolve_split(const StatePair& x, double T, const SolveConfig& cfg, const StepObserver& obs = {},
                              int observe_every = 1) {
  return detail::strang(x, T, cfg, [](const SpectralField& u) { return cube(u); }, obs, observe_every);
}

/// pi_N((pi_N u)^3), evaluated on the smallest grid that holds the ball |n| <= N
/// with enough padding for the low modes of the cube to be exact.
inline SpectralField truncated_cube(const SpectralField& u, double n) {
  const ModeGrid& g = u.grid();
  const int k = std::min(static_cast<int>(std::floor(n)), g.modes / 2 - 1);
  if (k < 0) return SpectralField(g);
  const ModeGrid small = ModeGrid::containing_ball(g.dim, k);
  const SpectralField low = project_leq(n, regrid(u, small));
  return regrid(project_leq(n, cube(low)), g);
}

/// Truncated flow Phi_N: v' = Delta u - pi_N((pi_N u)^3).
///
/// Modes with |n| > N never feel the nonlinearity. Their coefficients are
/// taken from one exact free evolution of the data, so they agree bit for bit
/// with free_evolve. When the ball contains the whole grid this is exactly
/// evolve_split.
inline StatePair truncated_flow(const StatePair& x, double n, double T, const SolveConfig& cfg,
                                const StepObserver& obs = {}, int observe_every = 1) {
  require(n >= 0.0, errc::invalid_argument, "truncated_flow: N must be >= 0");
  const ModeGrid& g = x.grid();
  if (n >= g.max_norm()) return evolve_split(x, T, cfg, obs, observe_every);

  const double n2 = n * n;
  auto splice = [&](StatePair& y, double t) {
    const StatePair lin = free_evolve(x, t);
    g.for_each_mode([&](std::size_t i, const Wavevector&, double k2) {
      if (k2 > n2) {
        y.u[i] = lin.u[i];
        y.v[i] = lin.v[i];
      }
    });
  };
  StepObserver inner;
  if (obs)
    inner = [&](double t, const StatePair& y) {
      StatePair z = y;
      splice(z, t);
      obs(t, z);
    };
  StatePair out = detail::strang(x, T, cfg, [&](const SpectralField& u) { return truncated_cube(u, n); }, inner,
                                 observe_every);
  splice(out, T);
  return out;
}

}  // namespace nlw

#endif
