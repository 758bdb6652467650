#ifndef NLW_SPECTRAL_BUMP_HPP
#define NLW_SPECTRAL_BUMP_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "nlw/spectral/transform.hpp"

namespace nlw {

/// Radial bump phi(x) = exp(-1/(1 - |x/rho0|^2)) for |x| < rho0, else 0.
struct BumpSpec {
  double rho0 = std::numbers::pi / 2;

  double radial(double r) const {
    const double q = r / rho0;
    if (q >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - q * q));
  }
};

/// Wrapped coordinate of sample j in [-pi, pi).
inline double centered_coordinate(int j, int points) {
  double x = 2.0 * std::numbers::pi * j / points;
  if (x >= std::numbers::pi) x -= 2.0 * std::numbers::pi;
  return x;
}

/// Evaluates y -> fn(phi(n y)) at every physical node (y in [-pi,pi)^d), row-major.
template <class Fn>
std::vector<double> sample_dilated(const BumpSpec& phi, int n, const ModeGrid& g, Fn&& fn) {
  require(n >= 1, errc::invalid_argument, "bump_dilate: n must be >= 1");
  require(phi.rho0 > 0.0 && phi.rho0 / n < std::numbers::pi, errc::support_violation,
          "bump_dilate: dilated support does not fit in one period");
  const int p = g.points;
  std::vector<double> axis(p);
  for (int j = 0; j < p; ++j) axis[j] = centered_coordinate(j, p);
  std::vector<double> out(g.point_count());
  std::size_t flat = 0;
  const auto at = [&](double r2) { return fn(phi.radial(n * std::sqrt(r2))); };
  if (g.dim == 1) {
    for (int i = 0; i < p; ++i) out[flat++] = at(axis[i] * axis[i]);
  } else if (g.dim == 2) {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) out[flat++] = at(axis[i] * axis[i] + axis[j] * axis[j]);
  } else {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        for (int l = 0; l < p; ++l) out[flat++] = at(axis[i] * axis[i] + axis[j] * axis[j] + axis[l] * axis[l]);
  }
  return out;
}

/// The periodic field x -> phi(n x), sampled on the physical grid and
/// transformed (truncated to the mode grid).
inline SpectralField bump_dilate(const BumpSpec& phi, int n, const ModeGrid& g) {
  return to_spectral(g, sample_dilated(phi, n, g, [](double y) { return y; }));
}

/// Maps coefficient m of f to wavevector n*m on the target grid: if f = g(x)
/// then the result is g(n x). Modes that do not fit are dropped.
inline SpectralField dilate_modes(const SpectralField& f, int n, const ModeGrid& target) {
  require(target.dim == f.grid().dim, errc::dimension_mismatch, "dilate_modes: dimension mismatch");
  require(n >= 1, errc::invalid_argument, "dilate_modes: n must be >= 1");
  SpectralField out(target);
  f.grid().for_each_mode([&](std::size_t i, const Wavevector& k, double) {
    if (f.grid().is_nyquist(k)) return;
    const std::size_t j = target.index_of({n * k[0], n * k[1], n * k[2]});
    if (j != ModeGrid::npos) out[j] = f[i];
  });
  return out;
}

/// ||g(n .)||_{H^s} from the coefficients of g, without building the dilated grid.
inline double dilated_sobolev_norm(const SpectralField& f, int n, double s) {
  double acc = 0.0;
  const double n2s = static_cast<double>(n) * n;
  f.grid().for_each_mode([&](std::size_t i, const Wavevector&, double k2) {
    acc += std::pow(1.0 + n2s * k2, s) * std::norm(f[i]);
  });
  return std::sqrt(acc);
}

}  // namespace nlw

#endif
