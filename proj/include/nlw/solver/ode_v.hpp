#ifndef NLW_SOLVER_ODE_V_HPP
#define NLW_SOLVER_ODE_V_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "nlw/core/error.hpp"

namespace nlw {

/// Periodic solution of V'' + V^3 = 0, V(0) = 1, V'(0) = 0.
///
/// Built once by a Taylor-series integrator (degree `kDegree`, recursion
/// a_{k+2} = -(a*a*a)_k / ((k+1)(k+2))) on a uniform partition of one period.
/// Every node keeps its Taylor coefficients, so evaluation anywhere is a
/// periodic reduction plus one polynomial evaluation.
class OdeProfileV {
 public:
  static constexpr int kDegree = 24;
  static constexpr int kNodes = 512;

  struct Sample {
    double t, v, dv;
  };

  static const OdeProfileV& instance() {
    static const OdeProfileV profile;
    return profile;
  }

  double period() const noexcept { return period_; }

  /// (V(t), V'(t))
  std::pair<double, double> operator()(double t) const {
    double r = std::fmod(t, period_);
    if (r < 0) r += period_;
    std::size_t j = static_cast<std::size_t>(r / step_);
    if (j >= kNodes) j = kNodes - 1;
    return eval(coeffs_[j], r - j * step_);
  }

  /// (V')^2 + V^4/2 - 1/2, identically zero for the exact solution.
  double invariant_defect(double t) const {
    const auto [v, dv] = (*this)(t);
    return dv * dv + 0.5 * v * v * v * v - 0.5;
  }

  std::vector<Sample> table() const {
    std::vector<Sample> out;
    for (std::size_t j = 0; j <= kNodes; ++j) {
      const double t = j * step_;
      const auto [v, dv] = (*this)(t);
      out.push_back({t, v, dv});
    }
    return out;
  }

 private:
  using Coeffs = std::vector<double>;

  OdeProfileV() {
    // Half period: first positive zero of V', found by marching then Newton.
    double t = 0.0, v = 1.0, dv = 0.0;
    const double h = 1.0 / 16;
    for (;;) {
      const Coeffs c = taylor(v, dv);
      const auto [v1, dv1] = eval(c, h);
      if (t > 0.5 && dv1 >= 0.0) {
        double tau = 0.5 * h;
        for (int it = 0; it < 60; ++it) {
          const auto [vv, ddv] = eval(c, tau);
          const double step = ddv / (-vv * vv * vv);
          tau -= step;
          if (std::abs(step) < 1e-17) break;
        }
        period_ = 2.0 * (t + tau);
        break;
      }
      t += h;
      v = v1;
      dv = dv1;
      require(t < 100.0, errc::non_finite_field, "V profile: no turning point found");
    }

    step_ = period_ / kNodes;
    coeffs_.reserve(kNodes);
    v = 1.0;
    dv = 0.0;
    for (int j = 0; j < kNodes; ++j) {
      coeffs_.push_back(taylor(v, dv));
      std::tie(v, dv) = eval(coeffs_.back(), step_);
    }
  }

  static Coeffs taylor(double v, double dv) {
    Coeffs a(kDegree + 1, 0.0), sq(kDegree + 1, 0.0);
    a[0] = v;
    a[1] = dv;
    for (int k = 0; k + 2 <= kDegree; ++k) {
      // sq = a*a up to degree k, then cube_k = (sq*a)_k
      double s = 0.0;
      for (int i = 0; i <= k; ++i) s += a[i] * a[k - i];
      sq[k] = s;
      double c = 0.0;
      for (int i = 0; i <= k; ++i) c += sq[i] * a[k - i];
      a[k + 2] = -c / ((k + 1.0) * (k + 2.0));
    }
    return a;
  }

  static std::pair<double, double> eval(const Coeffs& a, double tau) {
    double v = 0.0, dv = 0.0;
    for (int k = kDegree; k >= 0; --k) v = v * tau + a[k];
    for (int k = kDegree; k >= 1; --k) dv = dv * tau + k * a[k];
    return {v, dv};
  }

  double period_ = 0.0;
  double step_ = 0.0;
  std::vector<Coeffs> coeffs_;
};

/// (V(t), V'(t)) of the shared profile.
inline std::pair<double, double> ode_v(double t) { return OdeProfileV::instance()(t); }

}  // namespace nlw

#endif
