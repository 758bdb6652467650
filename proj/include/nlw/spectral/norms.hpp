#ifndef NLW_SPECTRAL_NORMS_HPP
#define NLW_SPECTRAL_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlw/spectral/symbol.hpp"
#include "nlw/spectral/transform.hpp"

namespace nlw {

// Integrals are taken against the probability measure dx/(2pi)^d, so
// Parseval reads  int |f|^2 = sum |f_n|^2.

/// sum_n w(|n|^2) |f_n|^2
template <class Weight>
double weighted_square_sum(const SpectralField& f, Weight&& w) {
  double acc = 0.0;
  f.grid().for_each_mode([&](std::size_t i, const Wavevector&, double n2) { acc += w(n2) * std::norm(f[i]); });
  return acc;
}

/// int f g  (real fields)
inline double inner(const SpectralField& f, const SpectralField& g) {
  f.check_same_grid(g);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += (f[i] * std::conj(g[i])).real();
  return acc;
}

/// (sum <n>^{2s} |f_n|^2)^{1/2}
inline double sobolev_norm(const SpectralField& f, double s) {
  if (s == 0.0) return std::sqrt(weighted_square_sum(f, [](double) { return 1.0; }));
  return std::sqrt(weighted_square_sum(f, [s](double n2) { return std::pow(1.0 + n2, s); }));
}

/// ||grad f||_{L^2}
inline double gradient_norm(const SpectralField& f) {
  return std::sqrt(weighted_square_sum(f, [](double n2) { return n2; }));
}

/// Norm of the pair in H^s x H^{s-1}.
inline double energy_space_norm(const StatePair& x, double s) {
  const double a = sobolev_norm(x.u, s), b = sobolev_norm(x.v, s - 1.0);
  return std::sqrt(a * a + b * b);
}

/// L^p norm of physical samples under the normalized measure; p = inf gives the max.
inline double lebesgue_norm_of_samples(std::span<const double> x, double p) {
  require(p >= 1.0, errc::invalid_argument, "lebesgue_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double y : x) m = std::max(m, std::abs(y));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (double y : x) acc += y * y;
  } else {
    for (double y : x) acc += std::pow(std::abs(y), p);
  }
  return std::pow(acc / static_cast<double>(x.size()), 1.0 / p);
}

/// ||f||_{L^p} by quadrature on the physical grid, optionally refined by an
/// integer oversampling factor (same modes, more points).
inline double lebesgue_norm(const SpectralField& f, double p, int oversample = 1) {
  require(p >= 1.0, errc::invalid_argument, "lebesgue_norm: p must be >= 1");
  require(oversample >= 1, errc::invalid_argument, "lebesgue_norm: oversample must be >= 1");
  if (oversample == 1) return lebesgue_norm_of_samples(to_physical(f), p);
  const ModeGrid& g = f.grid();
  const ModeGrid fine(g.dim, g.modes, g.points * oversample);
  return lebesgue_norm_of_samples(to_physical(regrid(f, fine)), p);
}

/// ||f||_{W^{sigma,q}} = ||(1-Delta)^{sigma/2} f||_{L^q}
inline double bessel_potential_norm(const SpectralField& f, double sigma, double q) {
  return lebesgue_norm(apply_multiplier(SymbolSpec::bracket(sigma), f), q);
}

}  // namespace nlw

#endif
