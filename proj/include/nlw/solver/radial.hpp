#ifndef NLW_SOLVER_RADIAL_HPP
#define NLW_SOLVER_RADIAL_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "nlw/solver/config.hpp"
#include "nlw/spectral/transform.hpp"

namespace nlw {

/// Radial field on the unit ball in the reduced variable r*w(r):
///   r w(r) = sum_{n=1..M} a_n sin(n pi r),   r d_t w(r) = sum b_n sin(n pi r),
/// so w = sum a_n e_n with e_n = sin(n pi r)/r. Physical samples live at
/// r_j = j/P, j = 1..P-1.
struct RadialState {
  std::vector<double> a;
  std::vector<double> b;
  int points = 0;

  RadialState() = default;
  RadialState(int modes, int p = 0) : a(modes, 0.0), b(modes, 0.0), points(p ? p : 2 * modes) { validate(); }

  int modes() const noexcept { return static_cast<int>(a.size()); }

  void validate() const {
    require(!a.empty() && a.size() == b.size(), errc::dimension_mismatch, "radial state needs equal, nonempty a and b");
    require(points > modes(), errc::invalid_argument, "radial grid needs more points than modes");
  }

  friend bool operator==(const RadialState&, const RadialState&) = default;
};

struct RadialTrajectory {
  std::vector<double> times;
  std::vector<RadialState> states;
};

namespace detail {

inline void dst1(std::vector<double>& x) {
  fftw_plan plan = PlanCache::instance().get_r2r(static_cast<int>(x.size()), FFTW_RODFT00);
  fftw_execute_r2r(plan, x.data(), x.data());
}

}  // namespace detail

/// r w(r) at r_j = j/P, j = 1..P-1 (returned with index j-1).
inline std::vector<double> radial_samples(std::span<const double> a, int points) {
  std::vector<double> x(points - 1, 0.0);
  for (std::size_t n = 0; n < a.size() && n < x.size(); ++n) x[n] = 0.5 * a[n];
  detail::dst1(x);
  return x;
}

/// Sine coefficients (2/P) sum_j g_j sin(n pi r_j), n = 1..modes.
inline std::vector<double> radial_project(std::vector<double> g, int modes) {
  const double scale = 1.0 / static_cast<double>(g.size() + 1);
  detail::dst1(g);
  g.resize(modes);
  for (double& y : g) y *= scale;
  return g;
}

/// w(r) for r in [0, 1]; at r = 0 the limit sum a_n n pi.
inline double radial_value(const RadialState& x, double r) {
  if (!(r >= 0.0 && r <= 1.0)) fail(errc::singular_evaluation, "radial_value: r outside [0, 1]");
  double s = 0.0;
  if (r == 0.0) {
    for (int n = 1; n <= x.modes(); ++n) s += x.a[n - 1] * n * std::numbers::pi;
  } else {
    for (int n = 1; n <= x.modes(); ++n) s += x.a[n - 1] * std::sin(n * std::numbers::pi * r);
    s /= r;
  }
  if (!std::isfinite(s)) fail(errc::singular_evaluation, "radial_value: non-finite value");
  return s;
}

/// Potential (2/(alpha+2)) (1/P) sum_j |r w_N|^{alpha+2} / r_j^alpha, where w_N
/// keeps modes n <= N. This is (1/(alpha+2)) int_ball |w_N|^{alpha+2} dx / (2 pi):
/// the normalization in which the free Gaussian part reads
/// 1/2 sum ((n pi)^2 a_n^2 + b_n^2).
inline double radial_potential(const RadialState& x, double alpha, int n_trunc) {
  std::vector<double> a(x.a.begin(), x.a.begin() + std::min(n_trunc, x.modes()));
  const auto w = radial_samples(a, x.points);
  double acc = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double r = static_cast<double>(j + 1) / x.points;
    acc += std::pow(std::abs(w[j]), alpha + 2.0) / std::pow(r, alpha);
  }
  return 2.0 / (alpha + 2.0) * acc / x.points;
}

/// Truncated Hamiltonian 1/2 sum ((n pi)^2 a_n^2 + b_n^2) + radial_potential.
/// It is conserved by the semi-discrete truncated flow; the physical energy
/// of the ball is 2 pi times this value.
inline double radial_energy(const RadialState& x, double alpha, int n_trunc, bool nonlinear = true) {
  double quad = 0.0;
  for (int n = 1; n <= x.modes(); ++n) {
    const double w = n * std::numbers::pi;
    quad += w * w * x.a[n - 1] * x.a[n - 1] + x.b[n - 1] * x.b[n - 1];
  }
  return 0.5 * quad + (nonlinear ? radial_potential(x, alpha, n_trunc) : 0.0);
}

/// Gradient of radial_potential: (2/P) sum_j |r w_N|^alpha (r w_N) / r^alpha sin(n pi r_j), n <= N.
inline std::vector<double> radial_force(const RadialState& x, double alpha, int n_trunc) {
  const int nt = std::min(n_trunc, x.modes());
  std::vector<double> a(x.a.begin(), x.a.begin() + nt);
  auto w = radial_samples(a, x.points);
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double r = static_cast<double>(j + 1) / x.points;
    w[j] = std::pow(std::abs(w[j]), alpha) * w[j] / std::pow(r, alpha);
  }
  auto f = radial_project(std::move(w), nt);
  f.resize(x.modes(), 0.0);
  return f;
}

/// (sum (n pi)^{2 sigma} a_n^2)^{1/2}: the H^sigma norm of w built from the
/// Dirichlet Laplacian, in the reduced normalization.
inline double radial_sobolev_norm(const RadialState& x, double sigma) {
  double acc = 0.0;
  for (int n = 1; n <= x.modes(); ++n) acc += std::pow(n * std::numbers::pi, 2 * sigma) * x.a[n - 1] * x.a[n - 1];
  return std::sqrt(acc);
}

/// Exact linear flow: each (a_n, b_n) rotates with frequency n pi.
inline void radial_free_evolve(RadialState& x, double t) {
  for (int n = 1; n <= x.modes(); ++n) {
    const double w = n * std::numbers::pi, c = std::cos(w * t), s = std::sin(w * t);
    const double a = x.a[n - 1], b = x.b[n - 1];
    x.a[n - 1] = c * a + (s / w) * b;
    x.b[n - 1] = -w * s * a + c * b;
  }
}

using RadialObserver = std::function<void(double, const RadialState&)>;

/// Truncated radial flow (d_t^2 - Delta) w + S_N(|S_N w|^alpha S_N w) = 0 on the
/// unit ball, Dirichlet boundary, by Strang splitting in the reduced variable.
inline RadialState radial_evolve(RadialState x, double alpha, int n_trunc, double T, const SolveConfig& cfg,
                                 const RadialObserver& obs = {}, int observe_every = 1) {
  x.validate();
  require(alpha > 0.0 && alpha <= 3.0, errc::alpha_out_of_range, "radial_evolve supports 0 < alpha <= 3");
  require(n_trunc >= 0 && n_trunc <= x.modes(), errc::invalid_argument, "radial_evolve: need 0 <= N <= M");
  require(cfg.dt > 0.0, errc::invalid_argument, "dt must be positive");
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(T) / cfg.dt - 1e-9)));
  const double h = T / steps;
  observe_every = std::max(1, observe_every);
  if (obs) obs(0.0, x);
  if (T == 0.0) return x;
  const bool nl = cfg.nonlinear && n_trunc > 0;
  std::vector<double> f;
  if (nl) f = radial_force(x, alpha, n_trunc);
  for (int k = 1; k <= steps; ++k) {
    if (nl)
      for (int n = 0; n < x.modes(); ++n) x.b[n] -= 0.5 * h * f[n];
    radial_free_evolve(x, h);
    if (nl) {
      f = radial_force(x, alpha, n_trunc);
      for (int n = 0; n < x.modes(); ++n) x.b[n] -= 0.5 * h * f[n];
    }
    for (int n = 0; n < x.modes(); ++n)
      if (!std::isfinite(x.a[n]) || !std::isfinite(x.b[n])) fail(errc::non_finite_field, "radial_evolve: overflow");
    if (obs && (k % observe_every == 0 || k == steps)) obs(k == steps ? T : k * h, x);
  }
  return x;
}

}  // namespace nlw

#endif
