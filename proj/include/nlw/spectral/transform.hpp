#ifndef NLW_SPECTRAL_TRANSFORM_HPP
#define NLW_SPECTRAL_TRANSFORM_HPP

#include <fftw3.h>

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <tuple>
#include <vector>

#include "nlw/spectral/field.hpp"

namespace nlw {

namespace detail {

// FFTW's planner is not thread-safe, execution is. Plans are created once per
// (dim, P, sign) under a lock with FFTW_ESTIMATE (deterministic algorithm
// choice) and executed through the new-array interface on per-call buffers.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int dim, int points, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(dim, points, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::array<int, 3> n{points, points, points};
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(points);
    auto* buf = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(dim, n.data(), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, plan);
    return plan;
  }

  /// One-dimensional real-to-real plan of length n (e.g. FFTW_RODFT00).
  fftw_plan get_r2r(int n, fftw_r2r_kind kind) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(-1, n, static_cast<int>(kind));
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* buf = fftw_alloc_real(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_r2r_1d(n, buf, buf, kind, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

inline void execute_in_place(int dim, int points, int sign, std::vector<cplx>& data) {
  fftw_plan plan = PlanCache::instance().get(dim, points, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

/// Flat physical-grid index of wavevector k (components taken mod P).
inline std::size_t physical_index(const ModeGrid& g, const Wavevector& k) {
  std::size_t flat = 0;
  for (int a = 0; a < g.dim; ++a) {
    const int j = k[a] >= 0 ? k[a] : k[a] + g.points;
    flat = flat * g.points + j;
  }
  return flat;
}

}  // namespace detail

/// Samples f(x_j) on the P^d physical grid (row-major).
inline std::vector<double> to_physical(const SpectralField& f) {
  const ModeGrid& g = f.grid();
  std::vector<cplx> buf(g.point_count());
  g.for_each_mode([&](std::size_t i, const Wavevector& k, double) { buf[detail::physical_index(g, k)] = f[i]; });
  detail::execute_in_place(g.dim, g.points, FFTW_BACKWARD, buf);
  std::vector<double> out(buf.size());
  for (std::size_t j = 0; j < buf.size(); ++j) out[j] = buf[j].real();
  return out;
}

/// Inverse of to_physical for band-limited samples: forward DFT / P^d,
/// truncated to the mode grid, Hermitian-projected.
inline SpectralField to_spectral(const ModeGrid& g, std::span<const double> samples) {
  require(samples.size() == g.point_count(), errc::dimension_mismatch, "sample count does not match physical grid");
  std::vector<cplx> buf(samples.begin(), samples.end());
  detail::execute_in_place(g.dim, g.points, FFTW_FORWARD, buf);
  const double scale = 1.0 / static_cast<double>(g.point_count());
  SpectralField f(g);
  g.for_each_mode([&](std::size_t i, const Wavevector& k, double) {
    if (!g.is_nyquist(k)) f[i] = buf[detail::physical_index(g, k)] * scale;
  });
  f.make_hermitian();
  return f;
}

/// Physical-space coordinates of sample j along one axis.
inline double grid_coordinate(const ModeGrid& g, int j) {
  return 2.0 * std::numbers::pi * j / g.points;
}

/// Mean of samples = integral against dx/(2pi)^d (trapezoid rule).
inline double physical_mean(std::span<const double> samples) {
  double s = 0.0;
  for (double x : samples) s += x;
  return samples.empty() ? 0.0 : s / static_cast<double>(samples.size());
}

/// Dealiased pointwise map: g(f) evaluated on the padded grid, truncated back.
template <class Fn>
SpectralField pointwise(const SpectralField& f, Fn&& fn) {
  auto x = to_physical(f);
  for (double& y : x) y = fn(y);
  return to_spectral(f.grid(), x);
}

/// Dealiased product of two fields.
inline SpectralField multiply(const SpectralField& a, const SpectralField& b) {
  a.check_same_grid(b);
  auto x = to_physical(a);
  const auto y = to_physical(b);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] *= y[j];
  return to_spectral(a.grid(), x);
}

/// Dealiased cube f^3.
inline SpectralField cube(const SpectralField& f) {
  return pointwise(f, [](double y) { return y * y * y; });
}

}  // namespace nlw

#endif
