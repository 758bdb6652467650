#ifndef NLW_DIAGNOSTICS_ENERGY_HPP
#define NLW_DIAGNOSTICS_ENERGY_HPP

#include <algorithm>
#include <cmath>

#include "nlw/spectral/norms.hpp"
#include "nlw/spectral/symbol.hpp"
#include "nlw/spectral/transform.hpp"

namespace nlw {

namespace detail {

// Physical samples of f on a grid with at least 2M points per axis, where the
// trapezoid mean of a quartic in f is exact.
inline std::vector<double> quartic_exact_samples(const SpectralField& f) {
  const ModeGrid& g = f.grid();
  if (g.points >= 2 * g.modes) return to_physical(f);
  return to_physical(regrid(f, ModeGrid(g.dim, g.modes, 2 * g.modes)));
}

inline double mean_fourth_power(const SpectralField& f) {
  double acc = 0.0;
  const auto x = quartic_exact_samples(f);
  for (double y : x) acc += y * y * y * y;
  return acc / static_cast<double>(x.size());
}

}  // namespace detail

/// H(u, v) = 1/2 int (v^2 + |grad u|^2) + 1/4 int u^4, with int against
/// dx/(2pi)^d. The pointwise density (u_t)^2 + |grad u|^2 + u^4/2 integrates to 2H.
inline double energy(const StatePair& x) {
  const double kin = std::pow(sobolev_norm(x.v, 0), 2);
  const double grad = std::pow(gradient_norm(x.u), 2);
  return 0.5 * (kin + grad) + 0.25 * detail::mean_fourth_power(x.u);
}

/// H_N: as energy, with the quartic term evaluated on pi_N u.
inline double truncated_energy(const StatePair& x, double n) {
  const double kin = std::pow(sobolev_norm(x.v, 0), 2);
  const double grad = std::pow(gradient_norm(x.u), 2);
  return 0.5 * (kin + grad) + 0.25 * detail::mean_fourth_power(project_leq(n, x.u));
}

/// E_n(u) = n^{-(1-s)} (||u_t||^2 + ||grad u||^2)^{1/2}
///        + n^{-(2-s)} (||u_t||_{H^1}^2 + ||grad u||_{H^1}^2)^{1/2}
inline double semiclassical_energy(const StatePair& x, int n, double s) {
  require(n >= 1, errc::invalid_argument, "semiclassical_energy: n must be >= 1");
  const double low = std::pow(sobolev_norm(x.v, 0), 2) + std::pow(gradient_norm(x.u), 2);
  const double high = std::pow(sobolev_norm(x.v, 1), 2) + weighted_square_sum(x.u, [](double k2) { return (1 + k2) * k2; });
  return std::pow(n, -(1 - s)) * std::sqrt(low) + std::pow(n, -(2 - s)) * std::sqrt(high);
}

struct EnergyReport {
  double t = 0.0;
  double H = 0.0;
  std::vector<double> s;
  std::vector<double> u_norm;  // ||u||_{H^s}
  std::vector<double> v_norm;  // ||v||_{H^{s-1}}
};

inline EnergyReport energy_report(const StatePair& x, double t, const std::vector<double>& s_list) {
  EnergyReport r;
  r.t = t;
  r.H = energy(x);
  r.s = s_list;
  for (double s : s_list) {
    r.u_norm.push_back(sobolev_norm(x.u, s));
    r.v_norm.push_back(sobolev_norm(x.v, s - 1));
  }
  return r;
}

}  // namespace nlw

#endif
