#ifndef NLW_SPECTRAL_SYMBOL_HPP
#define NLW_SPECTRAL_SYMBOL_HPP

#include <cmath>
#include <functional>
#include <string>

#include "nlw/spectral/field.hpp"

namespace nlw {

/// Real radial Fourier symbol m(|n|^2).
class Symbol {
 public:
  using Fn = std::function<double(double)>;

  explicit Symbol(Fn fn) : fn_(std::move(fn)) {}

  double operator()(double norm2) const { return fn_(norm2); }

  friend Symbol operator*(const Symbol& a, const Symbol& b) {
    return Symbol([a, b](double n2) { return a(n2) * b(n2); });
  }

 private:
  Fn fn_;
};

/// Declarative description of the symbols used across the library.
struct SymbolSpec {
  enum class Kind {
    bracket_power,    // <n>^s
    wave_cos,         // cos(t|n|)
    wave_sinc,        // sin(t|n|)/|n|, equal to t at n = 0
    modified_weight,  // (1 + |n|^2 + |n|^{2s+2})^{sign/2}
    laplacian_power,  // |n|^s = (-Delta)^{s/2}; 0 at n = 0 unless s = 0
  };

  Kind kind = Kind::bracket_power;
  double s = 0.0;
  double t = 0.0;
  int sign = 1;

  static SymbolSpec bracket(double s) { return {Kind::bracket_power, s, 0.0, 1}; }
  static SymbolSpec cos_wave(double t) { return {Kind::wave_cos, 0.0, t, 1}; }
  static SymbolSpec sinc_wave(double t) { return {Kind::wave_sinc, 0.0, t, 1}; }
  static SymbolSpec modified(double s, int sign) { return {Kind::modified_weight, s, 0.0, sign}; }
  static SymbolSpec laplacian(double s) { return {Kind::laplacian_power, s, 0.0, 1}; }

  double operator()(double n2) const {
    switch (kind) {
      case Kind::bracket_power:
        return s == 0.0 ? 1.0 : std::pow(1.0 + n2, 0.5 * s);
      case Kind::wave_cos:
        return std::cos(t * std::sqrt(n2));
      case Kind::wave_sinc: {
        if (n2 == 0.0) return t;
        const double r = std::sqrt(n2);
        return std::sin(t * r) / r;
      }
      case Kind::modified_weight: {
        const double w = 1.0 + n2 + std::pow(n2, s + 1.0);
        return sign > 0 ? std::sqrt(w) : 1.0 / std::sqrt(w);
      }
      case Kind::laplacian_power:
        if (s == 0.0) return 1.0;
        return n2 == 0.0 ? 0.0 : std::pow(n2, 0.5 * s);
    }
    return 0.0;
  }

  Symbol symbol() const {
    return Symbol([spec = *this](double n2) { return spec(n2); });
  }
};

/// Coefficient-wise product with a real radial symbol; preserves Hermitian symmetry.
template <class Sym>
SpectralField apply_multiplier(const Sym& sym, SpectralField f) {
  f.grid().for_each_mode([&](std::size_t i, const Wavevector&, double n2) { f[i] *= sym(n2); });
  return f;
}

/// Frequency projector onto |n| <= cutoff.
inline SpectralField project_leq(double cutoff, SpectralField f) {
  require(cutoff >= 0.0, errc::invalid_argument, "project_leq: cutoff must be >= 0");
  const double c2 = cutoff * cutoff;
  f.grid().for_each_mode([&](std::size_t i, const Wavevector&, double n2) {
    if (n2 > c2) f[i] = 0.0;
  });
  return f;
}

/// Complement of project_leq: keeps |n| > cutoff.
inline SpectralField project_gt(double cutoff, SpectralField f) {
  const double c2 = cutoff * cutoff;
  f.grid().for_each_mode([&](std::size_t i, const Wavevector&, double n2) {
    if (n2 <= c2) f[i] = 0.0;
  });
  return f;
}

/// Removes the mean (zero mode).
inline SpectralField project_nonzero(SpectralField f) {
  if (f.size()) f[0] = 0.0;
  return f;
}

/// Partial derivative along one axis: coefficient k -> i k_axis f_k.
inline SpectralField partial(const SpectralField& f, int axis) {
  require(axis >= 0 && axis < f.grid().dim, errc::dimension_mismatch, "partial: axis out of range");
  SpectralField out(f.grid());
  f.grid().for_each_mode([&](std::size_t i, const Wavevector& k, double) { out[i] = cplx(0.0, k[axis]) * f[i]; });
  return out;
}

inline StatePair project_leq(double cutoff, const StatePair& x) {
  return {project_leq(cutoff, x.u), project_leq(cutoff, x.v)};
}

}  // namespace nlw

#endif
