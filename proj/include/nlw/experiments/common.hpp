#ifndef NLW_EXPERIMENTS_COMMON_HPP
#define NLW_EXPERIMENTS_COMMON_HPP

#include <cmath>

#include "nlw/randomize/samplers.hpp"
#include "nlw/spectral/field.hpp"

namespace nlw {

/// Deterministic pair just inside H^s x H^{s-1}: |u0_k| = <k>^{-(s+d/2+eps)},
/// |u1_k| = <k>^{-(s-1+d/2+eps)}, with equal cos and sin parts.
inline StatePair power_law_pair(const ModeGrid& g, double s, double eps, bool mean_zero) {
  StatePair x = StatePair::zero(g);
  const double d2 = 0.5 * g.dim;
  const double h = std::sqrt(0.5);
  g.for_each_mode([&](std::size_t i, const Wavevector& k, double n2) {
    if (g.is_nyquist(k)) return;
    const double a = std::pow(1.0 + n2, -(s + d2 + eps) / 2), b = std::pow(1.0 + n2, -(s - 1.0 + d2 + eps) / 2);
    if (n2 == 0.0) {
      if (!mean_zero) {
        x.u[i] = a;
        x.v[i] = b;
      }
      return;
    }
    if (!is_half_lattice(k)) return;
    const std::size_t j = g.index_of(negate(k));
    x.u[i] = cplx(h * a, h * a);
    x.v[i] = cplx(h * b, h * b);
    x.u[j] = std::conj(x.u[i]);
    x.v[j] = std::conj(x.v[i]);
  });
  return x;
}

}  // namespace nlw

#endif
