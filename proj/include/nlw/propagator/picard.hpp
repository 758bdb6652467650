#ifndef NLW_PROPAGATOR_PICARD_HPP
#define NLW_PROPAGATOR_PICARD_HPP

#include <vector>

#include "nlw/propagator/duhamel.hpp"
#include "nlw/spectral/norms.hpp"
#include "nlw/spectral/transform.hpp"

namespace nlw {

/// w -> linear + Duhamel[-(f + w)^3] on the nodes of tg. `forcing` (may be
/// null) holds f at every node.
inline Trajectory duhamel_map(const Trajectory& linear, const Trajectory& w, const std::vector<SpectralField>* forcing,
                              const TimeGrid& tg) {
  const ModeGrid& g = linear.states.front().grid();
  std::vector<SpectralField> src(tg.node_count());
  for (std::size_t k = 0; k < tg.node_count(); ++k) {
    if (!detail::needs_source(tg, k)) continue;
    const SpectralField base = forcing ? (*forcing)[k] + w.states[k].u : w.states[k].u;
    src[k] = -cube(base);
  }
  Trajectory out = duhamel_nodes(src, tg, g);
  for (std::size_t k = 0; k < out.size(); ++k) out.states[k] += linear.states[k];
  return out;
}

/// Iterates u^(0) = 0, u^(1) = S(t)(u0, u1), u^(j+1) = u^(1) + T(u^(j), u^(j), u^(j))
/// for j < k, where T(u, v, w) = -int sin((t-s)|D|)/|D| (u v w)(s) ds.
/// Returns every iterate as a trajectory (u and du/dt) on the nodes of tg.
inline std::vector<Trajectory> picard_sequence(const StatePair& data, int k, const TimeGrid& tg) {
  require(k >= 0, errc::invalid_argument, "picard: iteration count must be >= 0");
  std::vector<Trajectory> out;
  Trajectory zero;
  zero.times = tg.nodes();
  zero.states.assign(tg.node_count(), StatePair::zero(data.grid()));
  out.push_back(zero);
  if (k == 0) return out;
  const Trajectory linear = free_trajectory(data, tg);
  out.push_back(linear);
  for (int j = 1; j < k; ++j) out.push_back(duhamel_map(linear, out.back(), nullptr, tg));
  return out;
}

/// The k-th Picard iterate u^(k) at the nodes of tg.
inline FieldSeries picard_iterate(const StatePair& data, int k, const TimeGrid& tg) {
  const auto seq = picard_sequence(data, k, tg);
  FieldSeries out;
  out.times = seq.back().times;
  for (const auto& x : seq.back().states) out.fields.push_back(x.u);
  return out;
}

/// sup over nodes of ||a.u - b.u||_{H^1}
inline double sup_h1_distance(const Trajectory& a, const Trajectory& b) {
  require(a.size() == b.size(), errc::dimension_mismatch, "trajectories sampled differently");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, sobolev_norm(a.states[k].u - b.states[k].u, 1.0));
  return m;
}

}  // namespace nlw

#endif
