#ifndef NLW_PROPAGATOR_FREE_HPP
#define NLW_PROPAGATOR_FREE_HPP

#include <cmath>

#include "nlw/spectral/field.hpp"

namespace nlw {

/// Exact linear wave flow: (u, v) -> (S(t)(u, v), d/dt S(t)(u, v)).
/// Mode n rotates by angle t|n| in the (|n| u_n, v_n) plane; the zero mode
/// drifts as u_0 + t v_0.
inline StatePair free_evolve(const StatePair& x, double t) {
  const ModeGrid& g = x.grid();
  StatePair out = StatePair::zero(g);
  g.for_each_mode([&](std::size_t i, const Wavevector&, double n2) {
    const cplx u = x.u[i], v = x.v[i];
    if (n2 == 0.0) {
      out.u[i] = u + t * v;
      out.v[i] = v;
      return;
    }
    const double r = std::sqrt(n2), c = std::cos(t * r), s = std::sin(t * r);
    out.u[i] = c * u + (s / r) * v;
    out.v[i] = -r * s * u + c * v;
  });
  return out;
}

/// Accumulates out += sum_q w_q * Sbar(tau_q)(0, F_q), i.e.
/// u += w sin(tau|n|)/|n| F and v += w cos(tau|n|) F modewise.
inline void accumulate_wave_kernel(StatePair& out, std::span<const SpectralField* const> sources,
                                   std::span<const double> taus, std::span<const double> weights) {
  const ModeGrid& g = out.grid();
  for (const auto* f : sources) out.u.check_same_grid(*f);
  g.for_each_mode([&](std::size_t i, const Wavevector&, double n2) {
    cplx du = 0.0, dv = 0.0;
    if (n2 == 0.0) {
      for (std::size_t q = 0; q < sources.size(); ++q) {
        const cplx f = (*sources[q])[i];
        du += weights[q] * taus[q] * f;
        dv += weights[q] * f;
      }
    } else {
      const double r = std::sqrt(n2);
      for (std::size_t q = 0; q < sources.size(); ++q) {
        const cplx f = (*sources[q])[i];
        du += weights[q] * (std::sin(taus[q] * r) / r) * f;
        dv += weights[q] * std::cos(taus[q] * r) * f;
      }
    }
    out.u[i] += du;
    out.v[i] += dv;
  });
}

}  // namespace nlw

#endif
