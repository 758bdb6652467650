#ifndef NLW_DIAGNOSTICS_STATISTICS_HPP
#define NLW_DIAGNOSTICS_STATISTICS_HPP

#include <cmath>
#include <span>
#include <vector>

#include "nlw/core/error.hpp"

namespace nlw {

struct MeanEstimate {
  double mean = 0.0;
  double se = 0.0;
};

inline MeanEstimate mean_and_se(std::span<const double> x) {
  require(!x.empty(), errc::invalid_argument, "mean_and_se: no samples");
  const double n = static_cast<double>(x.size());
  double m = 0.0;
  for (double y : x) m += y;
  m /= n;
  double var = 0.0;
  for (double y : x) var += (y - m) * (y - m);
  var = x.size() > 1 ? var / (n - 1.0) : 0.0;
  return {m, std::sqrt(var / n)};
}

struct TailPoint {
  double lambda = 0.0;
  double survival = 0.0;  // P(|X| > lambda)
  double se = 0.0;
};

/// Empirical survival function of |X| on a lambda grid.
inline std::vector<TailPoint> tail_estimate(std::span<const double> samples, std::span<const double> lambdas) {
  require(!samples.empty(), errc::invalid_argument, "tail_estimate: no samples");
  const double n = static_cast<double>(samples.size());
  std::vector<TailPoint> out;
  for (double lam : lambdas) {
    std::size_t hits = 0;
    for (double y : samples) hits += std::abs(y) > lam;
    const double p = hits / n;
    out.push_back({lam, p, std::sqrt(p * (1.0 - p) / n)});
  }
  return out;
}

struct MomentPoint {
  double p = 0.0;
  double norm = 0.0;  // (E|X|^p)^{1/p}
  double se = 0.0;    // delta method
};

struct MomentFit {
  std::vector<MomentPoint> points;
  double slope = 0.0;     // least squares slope of log norm against log p
  double slope_se = 0.0;  // jackknife over contiguous blocks
};

namespace detail {

inline std::vector<MomentPoint> moment_points(std::span<const double> x, std::span<const double> ps) {
  std::vector<MomentPoint> out;
  const double n = static_cast<double>(x.size());
  for (double p : ps) {
    require(p >= 1.0, errc::invalid_argument, "moment_slope: p must be >= 1");
    double m = 0.0, m2 = 0.0;
    for (double y : x) {
      const double a = std::pow(std::abs(y), p);
      m += a;
      m2 += a * a;
    }
    m /= n;
    m2 /= n;
    const double norm = std::pow(m, 1.0 / p);
    const double se_m = std::sqrt(std::max(0.0, m2 - m * m) / n);
    out.push_back({p, norm, m > 0.0 ? norm * se_m / (p * m) : 0.0});
  }
  return out;
}

inline double log_slope(const std::vector<MomentPoint>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(pts.size());
  for (const auto& q : pts) {
    const double lx = std::log(q.p), ly = q.norm > 0.0 ? std::log(q.norm) : 0.0;
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = k * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (k * sxy - sx * sy) / den;
}

}  // namespace detail

/// Fits log ||X||_{L^p} = a + slope * log p over the p list.
inline MomentFit moment_slope(std::span<const double> samples, std::span<const double> ps, int blocks = 20) {
  require(!samples.empty(), errc::invalid_argument, "moment_slope: no samples");
  require(ps.size() >= 2, errc::invalid_argument, "moment_slope: need at least two exponents");
  MomentFit fit;
  fit.points = detail::moment_points(samples, ps);
  fit.slope = detail::log_slope(fit.points);

  const std::size_t n = samples.size();
  const std::size_t b = std::min<std::size_t>(blocks, n);
  if (b < 2) return fit;
  std::vector<double> reduced;
  std::vector<double> slopes;
  for (std::size_t k = 0; k < b; ++k) {
    const std::size_t lo = k * n / b, hi = (k + 1) * n / b;
    reduced.clear();
    reduced.insert(reduced.end(), samples.begin(), samples.begin() + lo);
    reduced.insert(reduced.end(), samples.begin() + hi, samples.end());
    slopes.push_back(detail::log_slope(detail::moment_points(reduced, ps)));
  }
  double mean = 0.0;
  for (double s : slopes) mean += s;
  mean /= b;
  double var = 0.0;
  for (double s : slopes) var += (s - mean) * (s - mean);
  fit.slope_se = std::sqrt(var * (b - 1.0) / b);
  return fit;
}

/// Cumulative trapezoid integral of f on the grid t.
inline std::vector<double> cumulative_integral(std::span<const double> f, std::span<const double> t) {
  require(f.size() == t.size() && !t.empty(), errc::dimension_mismatch, "cumulative_integral: size mismatch");
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t j = 1; j < t.size(); ++j) out[j] = out[j - 1] + 0.5 * (f[j] + f[j - 1]) * (t[j] - t[j - 1]);
  return out;
}

/// C (int_0^t g) exp(C int_0^t f). If dE/dt <= K E^{1/2} (g + f E^{1/2}) and
/// E(0) = 0 then E^{1/2}(t) is bounded by this curve with C = K/2.
inline std::vector<double> gronwall_envelope(std::span<const double> f, std::span<const double> g,
                                             std::span<const double> t, double c) {
  require(f.size() == t.size() && g.size() == t.size(), errc::dimension_mismatch, "gronwall_envelope: size mismatch");
  for (std::size_t j = 0; j < t.size(); ++j)
    require(f[j] >= 0.0 && g[j] >= 0.0, errc::invalid_argument, "gronwall_envelope: f and g must be nonnegative");
  const auto F = cumulative_integral(f, t);
  const auto G = cumulative_integral(g, t);
  std::vector<double> out(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) out[j] = c * G[j] * std::exp(c * F[j]);
  return out;
}

}  // namespace nlw

#endif
