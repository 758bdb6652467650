#ifndef NLW_SPECTRAL_GRID_HPP
#define NLW_SPECTRAL_GRID_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "nlw/core/error.hpp"

namespace nlw {

using Wavevector = std::array<int, 3>;

/// Isotropic Fourier mode grid on T^d.
///
/// Modes n have components in [-M/2, M/2), stored row-major with each axis
/// ordered 0, 1, ..., M/2-1, -M/2, ..., -1. The component -M/2 (Nyquist) has
/// no conjugate partner on the grid and is kept at zero by every operation
/// that produces a real field. Physical samples live on P points per axis at
/// x_j = 2*pi*j/P.
struct ModeGrid {
  int dim = 1;
  int modes = 2;   // M
  int points = 2;  // P

  ModeGrid() = default;
  ModeGrid(int d, int m, int p) : dim(d), modes(m), points(p) { validate(); }

  /// Grid with P = ceil(dealias * M), rounded up to an even count.
  static ModeGrid dealiased(int d, int m, double dealias = 2.0) {
    int p = static_cast<int>(std::ceil(dealias * m - 1e-9));
    if (p % 2) ++p;
    return ModeGrid(d, m, p);
  }

  /// Smallest grid whose non-Nyquist modes contain the ball |n| <= n_max.
  static ModeGrid containing_ball(int d, int n_max, double dealias = 2.0) {
    return dealiased(d, 2 * n_max + 2, dealias);
  }

  void validate() const {
    require(dim >= 1 && dim <= 3, errc::dimension_mismatch, "grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
    require(modes >= 2 && modes % 2 == 0, errc::invalid_argument, "modes per axis must be even and positive");
    require(points >= modes, errc::invalid_argument, "physical points per axis must be >= modes per axis");
  }

  bool can_dealias_cubic() const noexcept { return 2 * points >= 3 * modes; }

  std::size_t mode_count() const noexcept { return ipow(static_cast<std::size_t>(modes)); }
  std::size_t point_count() const noexcept { return ipow(static_cast<std::size_t>(points)); }

  int wavenumber(int axis_index) const noexcept { return axis_index < modes / 2 ? axis_index : axis_index - modes; }
  int axis_index(int k) const noexcept { return k >= 0 ? k : k + modes; }
  bool in_grid(int k) const noexcept { return k > -modes / 2 && k < modes / 2; }  // excludes Nyquist

  Wavevector wavevector(std::size_t flat) const noexcept {
    Wavevector k{0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
      k[a] = wavenumber(static_cast<int>(flat % modes));
      flat /= modes;
    }
    return k;
  }

  /// Flat index of k, or npos if any component is outside (-M/2, M/2).
  std::size_t index_of(const Wavevector& k) const noexcept {
    std::size_t flat = 0;
    for (int a = 0; a < dim; ++a) {
      if (!in_grid(k[a])) return npos;
      flat = flat * modes + axis_index(k[a]);
    }
    return flat;
  }

  bool is_nyquist(const Wavevector& k) const noexcept {
    for (int a = 0; a < dim; ++a)
      if (k[a] == -modes / 2) return true;
    return false;
  }

  /// Largest |n| over non-Nyquist modes.
  double max_norm() const noexcept { return std::sqrt(static_cast<double>(dim)) * (modes / 2 - 1); }

  /// Calls fn(flat, k, |k|^2) for every mode in storage order.
  template <class Fn>
  void for_each_mode(Fn&& fn) const {
    const int m = modes;
    std::size_t flat = 0;
    if (dim == 1) {
      for (int i = 0; i < m; ++i, ++flat) {
        const Wavevector k{wavenumber(i), 0, 0};
        fn(flat, k, static_cast<double>(k[0]) * k[0]);
      }
    } else if (dim == 2) {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j, ++flat) {
          const Wavevector k{wavenumber(i), wavenumber(j), 0};
          fn(flat, k, static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1]);
        }
    } else {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int l = 0; l < m; ++l, ++flat) {
            const Wavevector k{wavenumber(i), wavenumber(j), wavenumber(l)};
            fn(flat, k,
               static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] + static_cast<double>(k[2]) * k[2]);
          }
    }
  }

  friend bool operator==(const ModeGrid&, const ModeGrid&) = default;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t ipow(std::size_t b) const noexcept {
    std::size_t r = 1;
    for (int a = 0; a < dim; ++a) r *= b;
    return r;
  }
};

inline Wavevector negate(const Wavevector& k) noexcept { return {-k[0], -k[1], -k[2]}; }

}  // namespace nlw

#endif
