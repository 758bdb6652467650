#ifndef NLW_PROPAGATOR_DUHAMEL_HPP
#define NLW_PROPAGATOR_DUHAMEL_HPP

#include <functional>
#include <vector>

#include "nlw/propagator/free.hpp"
#include "nlw/propagator/time_grid.hpp"

namespace nlw {

/// Source term F(t) of the inhomogeneous wave equation.
using Source = std::function<SpectralField(double)>;

namespace detail {

inline bool needs_source(const TimeGrid& tg, std::size_t node) {
  return tg.interior() == 0 || node % tg.stride() != 0;
}

// Advances the zero-data Duhamel state across panel j. `f` holds F at the
// panel's quadrature nodes, `taus`/`w` the rule. Fills interior states when
// `inner` is non-null (Gauss rules only).
inline StatePair duhamel_panel(const TimeGrid& tg, int j, const StatePair& start, std::span<const SpectralField* const> f,
                               std::span<const double> taus, std::span<const double> w,
                               std::vector<StatePair>* inner) {
  const double a = tg.panel_start(j), b = tg.panel_start(j + 1);
  std::vector<double> lag(taus.size());
  for (std::size_t q = 0; q < taus.size(); ++q) lag[q] = b - taus[q];
  StatePair end = free_evolve(start, b - a);
  accumulate_wave_kernel(end, f, lag, w);

  if (inner) {
    // Interior node tau_q: free flow from the panel start plus the integral
    // over [a, tau_q] of the Lagrange interpolant of F through the nodes.
    inner->clear();
    const GaussRule sub = gauss_legendre(static_cast<int>(taus.size()));
    std::vector<SpectralField> fs(sub.size());
    std::vector<const SpectralField*> fp(sub.size());
    std::vector<double> lags(sub.size()), ws(sub.size());
    for (std::size_t q = 0; q < taus.size(); ++q) {
      const double len = taus[q] - a;
      for (std::size_t r = 0; r < sub.size(); ++r) {
        const double sigma = a + 0.5 * len * (sub.nodes[r] + 1.0);
        const auto lw = lagrange_weights(taus, sigma);
        fs[r] = SpectralField(start.grid());
        for (std::size_t l = 0; l < lw.size(); ++l) fs[r].axpy(lw[l], *f[l]);
        fp[r] = &fs[r];
        lags[r] = taus[q] - sigma;
        ws[r] = 0.5 * len * sub.weights[r];
      }
      StatePair x = free_evolve(start, len);
      accumulate_wave_kernel(x, fp, lags, ws);
      inner->push_back(std::move(x));
    }
  }
  return end;
}

}  // namespace detail

/// (u, du/dt) at every node of tg for the zero-data problem
/// (d_t^2 - Delta) u = F, u(t0) = du/dt(t0) = 0. `f_nodes[k]` is F at node k;
/// for Gauss rules the entries at panel endpoints are never read.
inline Trajectory duhamel_nodes(const std::vector<SpectralField>& f_nodes, const TimeGrid& tg, const ModeGrid& grid) {
  require(f_nodes.size() == tg.node_count(), errc::dimension_mismatch, "duhamel: one source sample per node required");
  Trajectory out;
  out.times = tg.nodes();
  out.states.reserve(tg.node_count());
  out.states.push_back(StatePair::zero(grid));
  std::vector<double> taus, w;
  std::vector<const SpectralField*> fp;
  std::vector<StatePair> inner;
  for (int j = 0; j < tg.steps; ++j) {
    tg.panel_rule(j, taus, w);
    const std::size_t base = tg.endpoint_node(j);
    fp.clear();
    if (tg.interior()) {
      for (int q = 0; q < tg.interior(); ++q) fp.push_back(&f_nodes[base + 1 + q]);
    } else {
      fp = {&f_nodes[base], &f_nodes[base + 1]};
    }
    const StatePair start = out.states.back();
    StatePair end = detail::duhamel_panel(tg, j, start, fp, taus, w, tg.interior() ? &inner : nullptr);
    for (auto& x : inner) out.states.push_back(std::move(x));
    inner.clear();
    out.states.push_back(std::move(end));
  }
  return out;
}

/// Zero-data Duhamel solution at t1, evaluating F only at quadrature nodes.
inline StatePair duhamel(const Source& f, const TimeGrid& tg, const ModeGrid& grid) {
  StatePair x = StatePair::zero(grid);
  std::vector<double> taus, w;
  std::vector<SpectralField> fs;
  std::vector<const SpectralField*> fp;
  for (int j = 0; j < tg.steps; ++j) {
    tg.panel_rule(j, taus, w);
    fs.clear();
    for (double t : taus) fs.push_back(f(t));
    fp.clear();
    for (auto& s : fs) fp.push_back(&s);
    x = detail::duhamel_panel(tg, j, x, fp, taus, w, nullptr);
  }
  return x;
}

/// Duhamel solution at every panel endpoint (t0, t0 + h, ..., t1).
inline Trajectory duhamel_endpoints(const Source& f, const TimeGrid& tg, const ModeGrid& grid) {
  Trajectory out;
  out.times.push_back(tg.t0);
  out.states.push_back(StatePair::zero(grid));
  std::vector<double> taus, w;
  std::vector<SpectralField> fs;
  std::vector<const SpectralField*> fp;
  for (int j = 0; j < tg.steps; ++j) {
    tg.panel_rule(j, taus, w);
    fs.clear();
    for (double t : taus) fs.push_back(f(t));
    fp.clear();
    for (auto& s : fs) fp.push_back(&s);
    out.states.push_back(detail::duhamel_panel(tg, j, out.states.back(), fp, taus, w, nullptr));
    out.times.push_back(tg.panel_start(j + 1));
  }
  return out;
}

/// Free evolution of `data` sampled at every node of tg (time measured from t0).
inline Trajectory free_trajectory(const StatePair& data, const TimeGrid& tg) {
  Trajectory out;
  out.times = tg.nodes();
  for (double t : out.times) out.states.push_back(free_evolve(data, t - tg.t0));
  return out;
}

/// max over samples of fn(state)
template <class Fn>
double sup_over(const Trajectory& tr, Fn&& fn) {
  double m = 0.0;
  for (const auto& x : tr.states) m = std::max(m, fn(x));
  return m;
}

}  // namespace nlw

#endif
