#ifndef NLW_EXPERIMENTS_QUASI_MOMENTS_HPP
#define NLW_EXPERIMENTS_QUASI_MOMENTS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nlw/core/parallel.hpp"
#include "nlw/diagnostics/energy.hpp"
#include "nlw/diagnostics/modified.hpp"
#include "nlw/diagnostics/statistics.hpp"
#include "nlw/experiments/report.hpp"
#include "nlw/randomize/rejection.hpp"
#include "nlw/randomize/samplers.hpp"
#include "nlw/solver/split.hpp"

namespace nlw {

struct QuasiMomentsConfig {
  double s = 2.0;
  int modes = 128;
  std::vector<int> n_list{16, 32, 64};
  // Energy threshold; NaN selects the pilot quantile below.
  double r = std::numeric_limits<double>::quiet_NaN();
  double pilot_quantile = 0.5;
  int pilot_samples = 400;
  std::vector<double> p_list{2, 4, 8, 16, 32};
  int samples = 10000;
  std::vector<double> fd_steps{0.02, 0.01, 0.005};
  int fd_n = 16;
  int fd_samples = 8;
  int fd_substeps = 8;
  double fd_order_min = 1.9;
  double moment_factor = 2.0;
  double n_stability = 0.25;
  std::vector<int> sigma_n_pair{256, 512};
  double sigma_tolerance = 0.05;
  std::uint64_t max_proposals = 1u << 16;
  unsigned threads = 1;

  void validate() const {
    require(s == 2.0, errc::unsupported_s, "quasi-moments: only s = 2 is implemented");
    require(modes >= 8 && modes % 2 == 0, errc::constraint_violation, "quasi-moments: modes must be even and >= 8");
    require(!n_list.empty() && !p_list.empty(), errc::constraint_violation, "quasi-moments: N and p lists must be non-empty");
    for (int n : n_list) require(n >= 1, errc::constraint_violation, "quasi-moments: N must be >= 1");
    for (double p : p_list) require(p >= 1.0, errc::constraint_violation, "quasi-moments: p must be >= 1");
    require(std::find(p_list.begin(), p_list.end(), 2.0) != p_list.end(), errc::constraint_violation,
            "quasi-moments: p list must contain 2");
    require(samples >= 2 && pilot_samples >= 1, errc::constraint_violation, "quasi-moments: need samples >= 2");
    require(pilot_quantile > 0.0 && pilot_quantile <= 1.0, errc::constraint_violation, "quasi-moments: pilot quantile in (0, 1]");
    require(fd_steps.size() >= 2 && fd_n >= 1 && fd_samples >= 1 && fd_substeps >= 1, errc::constraint_violation, "quasi-moments: bad finite-difference setup");
    require(sigma_n_pair.size() == 2 && sigma_n_pair[0] >= 2 && sigma_n_pair[1] > sigma_n_pair[0], errc::constraint_violation,
            "quasi-moments: sigma pair must be increasing and >= 2");
  }
};

namespace detail {

// pi_N of a mu~_s sample, drawn on the smallest grid holding the N-ball of the
// M-grid. Draws are keyed by wavevector, so this equals pi_N of the M-grid draw.
inline StatePair quasi_sample(double s, const ModeGrid& bg, int n, const CounterRng& rng) {
  return project_leq(n, sample_mu_tilde(s, bg, rng));
}

inline double moment_norm(const std::vector<double>& x, double p) {
  double acc = 0.0;
  for (double y : x) acc += std::pow(std::abs(y), p);
  return std::pow(acc / static_cast<double>(x.size()), 1.0 / p);
}

}  // namespace detail

inline ExperimentReport run_quasi_moments(const QuasiMomentsConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ExperimentReport rep;
  WallClock clock(rep);
  rep.name = "quasi-moments";
  rep.seed = seed;
  rep.rows = CsvTable({"section", "N", "x", "value", "aux"});

  const ModeGrid full(2, cfg.modes, cfg.modes);
  const SeedSpec seeds{seed, "quasi-moments"};
  const SeedSpec pilot_seeds{seed, "quasi-moments/pilot"};

  // One threshold for every N: the pilot quantile of max_N H(pi_N x).
  double r = cfg.r;
  if (std::isnan(r)) {
    const auto pilot = parallel_map(static_cast<std::size_t>(cfg.pilot_samples), cfg.threads, [&](std::size_t i) {
      double h = 0.0;
      for (int n : cfg.n_list)
        h = std::max(h, energy(detail::quasi_sample(cfg.s, detail::ball_grid(full, n), n, pilot_seeds.sample(i))));
      return h;
    });
    std::vector<double> sorted = pilot;
    std::sort(sorted.begin(), sorted.end());
    const auto k = static_cast<std::size_t>(std::ceil(cfg.pilot_quantile * sorted.size())) - 1;
    r = sorted[std::min(k, sorted.size() - 1)];
  }
  // H >= 0 and {H <= 0} = {0} is null under mu~
  require(r > 0.0, errc::zero_acceptance, "quasi-moments: r = " + format_number(r) + " is at or below the infimum 0 of H_N");
  rep.extra["r"] = r;

  // Moments of d/dt H_{s,N} under mu_{s,r,N}.
  std::vector<std::vector<double>> ratio(cfg.n_list.size());
  nlohmann::json acceptance = nlohmann::json::object();
  for (std::size_t a = 0; a < cfg.n_list.size(); ++a) {
    const int n = cfg.n_list[a];
    const ModeGrid bg = detail::ball_grid(full, n);
    struct Draw {
      double rate;
      std::uint64_t proposals;
    };
    const auto draws = parallel_map(static_cast<std::size_t>(cfg.samples), cfg.threads, [&](std::size_t i) {
      auto acc = sample_restricted([&](const CounterRng& g) { return detail::quasi_sample(cfg.s, bg, n, g); },
                                   [](const StatePair& x) { return energy(x); }, r, seeds.sample(i), cfg.max_proposals);
      return Draw{dt_modified_energy(acc.state, cfg.s, n).total, acc.proposals};
    });
    std::vector<double> rates;
    std::uint64_t proposals = 0;
    for (const auto& d : draws) {
      rates.push_back(d.rate);
      proposals += d.proposals;
    }
    const double rate = static_cast<double>(cfg.samples) / static_cast<double>(proposals);
    acceptance[std::to_string(n)] = rate;
    rep.rows.add_row({"acceptance", static_cast<long long>(n), "", rate, static_cast<long long>(proposals)});
    for (double p : cfg.p_list) {
      const double v = detail::moment_norm(rates, p) / p;
      ratio[a].push_back(v);
      rep.rows.add_row({"rate_moment", static_cast<long long>(n), p, v, ""});
    }
  }
  rep.extra["acceptance"] = acceptance;

  const std::size_t i2 = static_cast<std::size_t>(std::find(cfg.p_list.begin(), cfg.p_list.end(), 2.0) - cfg.p_list.begin());
  double worst_growth = 0.0, worst_spread = 0.0;
  for (std::size_t a = 0; a < ratio.size(); ++a)
    for (double v : ratio[a]) worst_growth = std::max(worst_growth, v / ratio[a][i2]);
  for (std::size_t k = 0; k < cfg.p_list.size(); ++k)
    for (std::size_t a = 0; a < ratio.size(); ++a) worst_spread = std::max(worst_spread, std::abs(ratio[a][k] / ratio[0][k] - 1.0));
  rep.add_verdict("C10", "rate L^p/p at most " + format_number(cfg.moment_factor) + "x its p = 2 value", worst_growth <= cfg.moment_factor,
                  worst_growth, cfg.moment_factor);
  rep.add_verdict("C10", "rate L^p/p stable across N", worst_spread <= cfg.n_stability, worst_spread, cfg.n_stability);

  // Wick-ordered quadratic under the unrestricted measure.
  double wick_growth = 0.0;
  for (int n : cfg.n_list) {
    const ModeGrid bg = detail::ball_grid(full, n);
    const auto w = parallel_map(static_cast<std::size_t>(cfg.samples), cfg.threads, [&](std::size_t i) {
      return wick_quadratic(detail::quasi_sample(cfg.s, bg, n, seeds.sample(i)).u, cfg.s, n);
    });
    std::vector<double> v;
    for (double p : cfg.p_list) {
      v.push_back(detail::moment_norm(w, p) / p);
      rep.rows.add_row({"wick_moment", static_cast<long long>(n), p, v.back(), ""});
    }
    for (double x : v) wick_growth = std::max(wick_growth, x / v[i2]);
  }
  rep.add_verdict("C10", "wick quadratic L^p/p at most " + format_number(cfg.moment_factor) + "x its p = 2 value",
                  wick_growth <= cfg.moment_factor, wick_growth, cfg.moment_factor);

  // Central differences along the truncated flow from restricted samples. The
  // order is read off the RMS error over samples: for a single sample the h^2
  // coefficient can vanish by accident.
  {
    const int n = cfg.fd_n;
    const ModeGrid bg = detail::ball_grid(full, n);
    const SeedSpec fd_seeds{seed, "quasi-moments/fd"};
    const auto errors = parallel_map(static_cast<std::size_t>(cfg.fd_samples), cfg.threads, [&](std::size_t i) {
      const auto x0 = sample_restricted([&](const CounterRng& g) { return detail::quasi_sample(cfg.s, bg, n, g); },
                                        [](const StatePair& x) { return energy(x); }, r, fd_seeds.sample(i), cfg.max_proposals)
                          .state;
      const double exact = dt_modified_energy(x0, cfg.s, n).total;
      std::vector<double> e;
      for (double h : cfg.fd_steps) {
        SolveConfig sc;
        sc.dt = h / cfg.fd_substeps;
        const double hp = modified_energy(truncated_flow(x0, n, h, sc), cfg.s, n);
        const double hm = modified_energy(truncated_flow(x0, n, -h, sc), cfg.s, n);
        e.push_back((hp - hm) / (2.0 * h) - exact);
      }
      return e;
    });
    std::vector<double> errs;
    for (std::size_t k = 0; k < cfg.fd_steps.size(); ++k) {
      double acc = 0.0, worst = 0.0;
      for (const auto& e : errors) {
        acc += e[k] * e[k];
        worst = std::max(worst, std::abs(e[k]));
      }
      errs.push_back(std::sqrt(acc / static_cast<double>(errors.size())));
      rep.rows.add_row({"finite_difference", static_cast<long long>(n), cfg.fd_steps[k], errs.back(), worst});
    }
    double order = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < errs.size(); ++k)
      order = std::min(order, std::log(errs[k - 1] / errs[k]) / std::log(cfg.fd_steps[k - 1] / cfg.fd_steps[k]));
    rep.extra["fd_order"] = order;
    rep.add_verdict("C10", "finite differences converge to the rate at order >= " + format_number(cfg.fd_order_min),
                    order >= cfg.fd_order_min, order, cfg.fd_order_min);
  }

  // sigma_N / log N between the two cutoffs.
  {
    const int n0 = cfg.sigma_n_pair[0], n1 = cfg.sigma_n_pair[1];
    const double a0 = sigma_n(cfg.s, n0) / std::log(n0), a1 = sigma_n(cfg.s, n1) / std::log(n1);
    rep.rows.add_row({"sigma_over_log", static_cast<long long>(n0), "", a0, ""});
    rep.rows.add_row({"sigma_over_log", static_cast<long long>(n1), "", a1, ""});
    const double change = std::abs(a1 / a0 - 1.0);
    rep.add_verdict("C10", "sigma_N / log N changes by at most " + format_number(cfg.sigma_tolerance), change <= cfg.sigma_tolerance,
                    change, cfg.sigma_tolerance);
  }
  return rep;
}

}  // namespace nlw

#endif
