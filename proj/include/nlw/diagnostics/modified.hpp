#ifndef NLW_DIAGNOSTICS_MODIFIED_HPP
#define NLW_DIAGNOSTICS_MODIFIED_HPP

#include <cmath>

#include "nlw/diagnostics/energy.hpp"
#include "nlw/randomize/samplers.hpp"

namespace nlw {

// Renormalized energies for s = 2 on T^2, D = sqrt(-Delta), evaluated on the
// projected pair (pi_N u, pi_N v). Quartic densities are averaged on the
// smallest grid holding the ball |n| <= N with 4N+4 points per axis, where
// they are exact.

namespace detail {

inline void check_modified_args(const StatePair& x, double s) {
  require(s == 2.0, errc::unsupported_s, "modified energy is implemented for s = 2 only");
  require(x.grid().dim == 2, errc::dimension_mismatch, "modified energy is defined on T^2");
}

inline ModeGrid ball_grid(const ModeGrid& g, int n) {
  const int k = std::max(0, std::min(n, g.modes / 2 - 1));
  return ModeGrid::containing_ball(g.dim, k);
}

inline double mean_product(std::initializer_list<const std::vector<double>*> fs) {
  const std::size_t m = (*fs.begin())->size();
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double p = 1.0;
    for (const auto* f : fs) p *= (*f)[j];
    acc += p;
  }
  return acc / static_cast<double>(m);
}

}  // namespace detail

/// int (D^s pi_N u)^2 - sigma_N(s, N)
inline double wick_quadratic(const SpectralField& u, double s, int n) {
  const double q = weighted_square_sum(project_leq(n, u), [s](double k2) { return k2 == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(k2, s); });
  return q - sigma_n(s, n);
}

/// H_{s,N} = 1/2 int (D^s v)^2 + 1/2 int (D^{s+1} u)^2 + 3/2 int (D^s u)^2 u^2
///         - 3/2 sigma_N int u^2 + H(u, v) + 1/2 int u^2, on (pi_N u, pi_N v).
inline double modified_energy(const StatePair& x, double s, int n) {
  detail::check_modified_args(x, s);
  const ModeGrid bg = detail::ball_grid(x.grid(), n);
  const SpectralField u = project_leq(n, regrid(x.u, bg));
  const SpectralField v = project_leq(n, regrid(x.v, bg));
  const double v2 = weighted_square_sum(v, [](double k2) { return k2 * k2; });
  const double u3 = weighted_square_sum(u, [](double k2) { return k2 * k2 * k2; });
  const auto pu = to_physical(u);
  const auto pd = to_physical(apply_multiplier(SymbolSpec::laplacian(2.0), u));
  const double quartic = detail::mean_product({&pd, &pd, &pu, &pu});
  const double l2 = std::pow(sobolev_norm(u, 0), 2);
  const double h = 0.5 * std::pow(sobolev_norm(v, 0), 2) + 0.5 * std::pow(gradient_norm(u), 2) + 0.25 * detail::mean_product({&pu, &pu, &pu, &pu});
  return 0.5 * v2 + 0.5 * u3 + 1.5 * quartic - 1.5 * sigma_n(s, n) * l2 + h + 0.5 * l2;
}

struct ModifiedEnergyRate {
  double total = 0.0;
  double q1 = 0.0;  // 3 int P0perp[(D^2 u)^2] P0perp[u v]
  double q2 = 0.0;  // 6 int (D^2 v) u |grad u|^2
  double q3 = 0.0;  // 3 (int (D^2 u)^2 - sigma_N) int u v
  double uv = 0.0;  // int u v, from d/dt of 1/2 int u^2
};

/// d/dt H_{s,N}(pi_N Phi_N(t)(u, v)) at t = 0. H is conserved by Phi_N and the
/// quadratic parts of the modified energy cancel against the Leibniz term
/// 3 u^2 Delta u of Delta(u^3), leaving Q1 + Q2 + Q3 + int u v.
inline ModifiedEnergyRate dt_modified_energy(const StatePair& x, double s, int n) {
  detail::check_modified_args(x, s);
  const ModeGrid bg = detail::ball_grid(x.grid(), n);
  const SpectralField u = project_leq(n, regrid(x.u, bg));
  const SpectralField v = project_leq(n, regrid(x.v, bg));
  const auto lap = SymbolSpec::laplacian(2.0);
  const auto pu = to_physical(u);
  const auto pv = to_physical(v);
  const auto pdu = to_physical(apply_multiplier(lap, u));
  const auto pdv = to_physical(apply_multiplier(lap, v));
  const auto px = to_physical(partial(u, 0));
  const auto py = to_physical(partial(u, 1));

  const std::size_t m = pu.size();
  double mean_a = 0, mean_b = 0, mean_ab = 0, q2 = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double a = pdu[j] * pdu[j], b = pu[j] * pv[j];
    mean_a += a;
    mean_b += b;
    mean_ab += a * b;
    q2 += pdv[j] * pu[j] * (px[j] * px[j] + py[j] * py[j]);
  }
  mean_a /= m;
  mean_b /= m;
  mean_ab /= m;
  q2 /= m;

  ModifiedEnergyRate r;
  // int u v and int (D^2 u)^2 exactly from coefficients
  r.uv = inner(u, v);
  const double d2 = weighted_square_sum(u, [](double k2) { return k2 * k2; });
  r.q1 = 3.0 * (mean_ab - mean_a * mean_b);
  r.q2 = 6.0 * q2;
  r.q3 = 3.0 * (d2 - sigma_n(s, n)) * r.uv;
  r.total = r.q1 + r.q2 + r.q3 + r.uv;
  return r;
}

}  // namespace nlw

#endif
