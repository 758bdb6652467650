#ifndef NLW_RANDOMIZE_SAMPLERS_HPP
#define NLW_RANDOMIZE_SAMPLERS_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>

#include "nlw/core/rng.hpp"
#include "nlw/randomize/distribution.hpp"
#include "nlw/solver/radial.hpp"
#include "nlw/spectral/field.hpp"

namespace nlw {

// Draws are keyed by wavevector, field slot and part, never by storage index,
// so a sample drawn on a small grid equals the low modes of the same sample
// drawn on a larger grid.

/// Counter for (k, slot, part); components must lie in (-2^15, 2^15).
inline std::uint64_t mode_counter(const Wavevector& k, unsigned slot, unsigned part) {
  constexpr std::uint64_t off = 1u << 15;
  const std::uint64_t a = static_cast<std::uint64_t>(k[0] + static_cast<std::int64_t>(off));
  const std::uint64_t b = static_cast<std::uint64_t>(k[1] + static_cast<std::int64_t>(off));
  const std::uint64_t c = static_cast<std::uint64_t>(k[2] + static_cast<std::int64_t>(off));
  return ((a << 32 | b << 16 | c) << 4) | (slot << 1) | part;
}

/// One representative of each pair {k, -k}: the first nonzero component is positive.
inline bool is_half_lattice(const Wavevector& k) {
  for (int c : k) {
    if (c > 0) return true;
    if (c < 0) return false;
  }
  return false;
}

/// Randomization of a real pair: each cos and sin coefficient of u and v is
/// multiplied by an independent draw. For a representative k,
/// f^w(k) = beta Re f(k) + i gamma Im f(k), mirrored to -k; the mean is
/// multiplied by one draw.
inline StatePair randomize_pair(const StatePair& base, const CoefficientDistribution& dist, const CounterRng& rng) {
  const ModeGrid& g = base.grid();
  StatePair out = StatePair::zero(g);
  const SpectralField* in[2] = {&base.u, &base.v};
  SpectralField* dst[2] = {&out.u, &out.v};
  g.for_each_mode([&](std::size_t i, const Wavevector& k, double n2) {
    if (g.is_nyquist(k)) return;
    if (n2 == 0.0) {
      for (unsigned s = 0; s < 2; ++s) (*dst[s])[i] = dist.draw(rng, mode_counter(k, s, 0)) * (*in[s])[i].real();
      return;
    }
    if (!is_half_lattice(k)) return;
    const std::size_t j = g.index_of(negate(k));
    for (unsigned s = 0; s < 2; ++s) {
      const cplx c = (*in[s])[i];
      const cplx r(dist.draw(rng, mode_counter(k, s, 0)) * c.real(), dist.draw(rng, mode_counter(k, s, 1)) * c.imag());
      (*dst[s])[i] = r;
      (*dst[s])[j] = std::conj(r);
    }
  });
  return out;
}

namespace detail {

// Complex Gaussian field with E|g_k|^2 = 1 (Re, Im each of variance 1/2),
// g_{-k} = conj g_k and real N(0,1) at k = 0, scaled by weight(|k|^2).
template <class Weight>
SpectralField gaussian_series(const ModeGrid& g, const CounterRng& rng, unsigned slot, Weight&& weight) {
  SpectralField f(g);
  const double h = std::sqrt(0.5);
  g.for_each_mode([&](std::size_t i, const Wavevector& k, double n2) {
    if (g.is_nyquist(k)) return;
    const double w = weight(n2);
    if (n2 == 0.0) {
      f[i] = w * rng.gaussian(mode_counter(k, slot, 0));
      return;
    }
    if (!is_half_lattice(k)) return;
    const cplx z(h * rng.gaussian(mode_counter(k, slot, 0)), h * rng.gaussian(mode_counter(k, slot, 1)));
    f[i] = w * z;
    f[g.index_of(negate(k))] = w * std::conj(z);
  });
  return f;
}

}  // namespace detail

/// mu_{s,d}: u = sum g_n <n>^{-(s+1)} e^{inx}, v = sum h_n <n>^{-s} e^{inx}
/// with independent standard complex Gaussians; the grid is the cutoff.
inline StatePair sample_mu_sd(double s, const ModeGrid& g, const CounterRng& rng) {
  auto u = detail::gaussian_series(g, rng, 0, [s](double n2) { return std::pow(1.0 + n2, -(s + 1.0) / 2); });
  auto v = detail::gaussian_series(g, rng, 1, [s](double n2) { return std::pow(1.0 + n2, -s / 2); });
  return {std::move(u), std::move(v)};
}

/// mu~_s: u-weight (1 + |n|^2 + |n|^{2s+2})^{-1/2}, v-weight (1 + |n|^{2s})^{-1/2}.
inline StatePair sample_mu_tilde(double s, const ModeGrid& g, const CounterRng& rng) {
  auto u = detail::gaussian_series(g, rng, 0, [s](double n2) { return 1.0 / std::sqrt(1.0 + n2 + std::pow(n2, s + 1.0)); });
  auto v = detail::gaussian_series(g, rng, 1, [s](double n2) { return 1.0 / std::sqrt(1.0 + std::pow(n2, s)); });
  return {std::move(u), std::move(v)};
}

/// sigma_N = sum_{n in Z^2, |n| <= N} |n|^{2s} / (1 + |n|^2 + |n|^{2s+2}), summed
/// exactly in a fixed order.
inline double sigma_n(double s, int n_max) {
  require(s >= 0.0, errc::invalid_argument, "sigma_n: s must be >= 0");
  require(n_max >= 0, errc::invalid_argument, "sigma_n: N must be >= 0");
  static std::mutex mu;
  static std::map<std::pair<double, int>, double> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({s, n_max}); it != cache.end()) return it->second;
  }
  const long long nn = static_cast<long long>(n_max) * n_max;
  long double acc = 0.0L;
  for (long long a = -n_max; a <= n_max; ++a)
    for (long long b = -n_max; b <= n_max; ++b) {
      const long long m2 = a * a + b * b;
      if (m2 == 0 || m2 > nn) continue;
      const long double x = static_cast<long double>(m2);
      acc += std::pow(x, static_cast<long double>(s)) / (1.0L + x + std::pow(x, static_cast<long double>(s + 1.0)));
    }
  std::lock_guard lock(mu);
  return cache.emplace(std::pair{s, n_max}, static_cast<double>(acc)).first->second;
}

/// Free radial measure: u = sum (h_n + i l_n)/(n pi) e_n. In the reduced state
/// the real part gives a_n = h_n/(n pi) and the imaginary part the velocity
/// b_n = l_n (= (-Delta)^{1/2} Im u in the sine basis).
inline RadialState sample_radial_free(int modes, const CounterRng& rng, int points = 0) {
  RadialState x(modes, points);
  for (int n = 1; n <= modes; ++n) {
    x.a[n - 1] = rng.gaussian(2 * static_cast<std::uint64_t>(n)) / (n * std::numbers::pi);
    x.b[n - 1] = rng.gaussian(2 * static_cast<std::uint64_t>(n) + 1);
  }
  return x;
}

}  // namespace nlw

#endif
