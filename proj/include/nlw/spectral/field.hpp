#ifndef NLW_SPECTRAL_FIELD_HPP
#define NLW_SPECTRAL_FIELD_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "nlw/core/error.hpp"
#include "nlw/spectral/grid.hpp"

namespace nlw {

using cplx = std::complex<double>;

/// Real function on T^d held as Hermitian-symmetric Fourier coefficients
/// f(x) = sum_n coeff(n) e^{i n.x}.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const ModeGrid& grid) : grid_(grid), coeffs_(grid.mode_count()) {}
  SpectralField(const ModeGrid& grid, std::vector<cplx> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
    require(coeffs_.size() == grid_.mode_count(), errc::dimension_mismatch, "coefficient count does not match grid");
  }

  /// The constant function c.
  static SpectralField constant(const ModeGrid& grid, double c) {
    SpectralField f(grid);
    f.coeffs_[0] = c;
    return f;
  }

  /// a*cos(k.x) + b*sin(k.x) for k != 0 (k on the grid, not Nyquist).
  static SpectralField trig_mode(const ModeGrid& grid, const Wavevector& k, double a, double b = 0.0) {
    SpectralField f(grid);
    const std::size_t ip = grid.index_of(k), im = grid.index_of(negate(k));
    require(ip != ModeGrid::npos && im != ModeGrid::npos, errc::support_violation, "wavevector outside mode grid");
    if (ip == im) {
      f.coeffs_[ip] = a;
    } else {
      f.coeffs_[ip] = cplx(a / 2, -b / 2);
      f.coeffs_[im] = cplx(a / 2, b / 2);
    }
    return f;
  }

  const ModeGrid& grid() const noexcept { return grid_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  std::span<cplx> coeffs() noexcept { return coeffs_; }
  cplx operator[](std::size_t i) const noexcept { return coeffs_[i]; }
  cplx& operator[](std::size_t i) noexcept { return coeffs_[i]; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  cplx at(const Wavevector& k) const {
    const std::size_t i = grid_.index_of(k);
    return i == ModeGrid::npos ? cplx{} : coeffs_[i];
  }

  /// Mean value (zero mode).
  double mean() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_[0].real(); }

  /// Largest |f(-n) - conj f(n)| including Nyquist coefficients (which must vanish).
  double hermitian_defect() const {
    double worst = 0.0;
    grid_.for_each_mode([&](std::size_t i, const Wavevector& k, double) {
      if (grid_.is_nyquist(k)) {
        worst = std::max(worst, std::abs(coeffs_[i]));
        return;
      }
      const std::size_t j = grid_.index_of(negate(k));
      worst = std::max(worst, std::abs(coeffs_[j] - std::conj(coeffs_[i])));
    });
    return worst;
  }

  /// Projects onto real fields: averages conjugate pairs, zeroes Nyquist.
  void make_hermitian() {
    grid_.for_each_mode([&](std::size_t i, const Wavevector& k, double) {
      if (grid_.is_nyquist(k)) {
        coeffs_[i] = 0.0;
        return;
      }
      const std::size_t j = grid_.index_of(negate(k));
      if (j < i) return;
      const cplx avg = 0.5 * (coeffs_[i] + std::conj(coeffs_[j]));
      coeffs_[i] = avg;
      coeffs_[j] = std::conj(avg);
    });
  }

  bool all_finite() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const cplx& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  double max_abs_diff(const SpectralField& o) const {
    check_same_grid(o);
    double m = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) m = std::max(m, std::abs(coeffs_[i] - o.coeffs_[i]));
    return m;
  }

  void check_same_grid(const SpectralField& o) const {
    require(grid_ == o.grid_, errc::dimension_mismatch, "fields live on different grids");
  }

  SpectralField& operator+=(const SpectralField& o) {
    check_same_grid(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    check_same_grid(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  SpectralField& operator*=(double a) {
    for (auto& c : coeffs_) c *= a;
    return *this;
  }
  /// this += a * o
  SpectralField& axpy(double a, const SpectralField& o) {
    check_same_grid(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * o.coeffs_[i];
    return *this;
  }

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator-(SpectralField a) { return a *= -1.0; }

  friend bool operator==(const SpectralField& a, const SpectralField& b) {
    return a.grid_.dim == b.grid_.dim && a.grid_.modes == b.grid_.modes && a.coeffs_ == b.coeffs_;
  }

 private:
  ModeGrid grid_;
  std::vector<cplx> coeffs_;
};

/// Copies coefficients onto another mode grid of the same dimension,
/// dropping modes that do not fit (and the target's Nyquist modes).
inline SpectralField regrid(const SpectralField& f, const ModeGrid& target) {
  require(target.dim == f.grid().dim, errc::dimension_mismatch, "regrid: dimension mismatch");
  SpectralField out(target);
  f.grid().for_each_mode([&](std::size_t i, const Wavevector& k, double) {
    if (f.grid().is_nyquist(k)) return;
    const std::size_t j = target.index_of(k);
    if (j != ModeGrid::npos) out[j] = f[i];
  });
  return out;
}

/// Phase-space point (u, v = du/dt).
struct StatePair {
  SpectralField u;
  SpectralField v;

  StatePair() = default;
  StatePair(SpectralField u_, SpectralField v_) : u(std::move(u_)), v(std::move(v_)) {
    u.check_same_grid(v);
  }
  static StatePair zero(const ModeGrid& grid) { return {SpectralField(grid), SpectralField(grid)}; }

  const ModeGrid& grid() const noexcept { return u.grid(); }

  StatePair& operator+=(const StatePair& o) {
    u += o.u;
    v += o.v;
    return *this;
  }
  StatePair& operator-=(const StatePair& o) {
    u -= o.u;
    v -= o.v;
    return *this;
  }
  friend StatePair operator+(StatePair a, const StatePair& b) { return a += b; }
  friend StatePair operator-(StatePair a, const StatePair& b) { return a -= b; }
  friend StatePair operator*(double s, StatePair a) {
    a.u *= s;
    a.v *= s;
    return a;
  }
  friend bool operator==(const StatePair&, const StatePair&) = default;
};

/// Samples of a field at increasing times.
struct FieldSeries {
  std::vector<double> times;
  std::vector<SpectralField> fields;

  std::size_t size() const noexcept { return times.size(); }
};

/// Samples of a phase-space trajectory at increasing times.
struct Trajectory {
  std::vector<double> times;
  std::vector<StatePair> states;

  std::size_t size() const noexcept { return times.size(); }
  const StatePair& back() const { return states.back(); }
};

}  // namespace nlw

#endif
