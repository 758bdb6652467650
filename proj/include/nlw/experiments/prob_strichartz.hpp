#ifndef NLW_EXPERIMENTS_PROB_STRICHARTZ_HPP
#define NLW_EXPERIMENTS_PROB_STRICHARTZ_HPP

#include <cmath>
#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlw/core/parallel.hpp"
#include "nlw/diagnostics/statistics.hpp"
#include "nlw/experiments/common.hpp"
#include "nlw/experiments/report.hpp"
#include "nlw/propagator/free.hpp"
#include "nlw/randomize/distribution.hpp"
#include "nlw/spectral/norms.hpp"

namespace nlw {

struct ProbStrichartzConfig {
  int dim = 3;
  int modes = 32;
  double s = 0.4;
  double eps = 0.1;  // base pair decay margin
  std::vector<std::string> distributions{"gaussian", "bernoulli"};
  std::vector<double> p_list{2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64};
  double p1 = 4.0;  // time exponent
  double p2 = 2.0;  // space exponent
  double delta = 1.5;
  double t_max = 16.0;
  int nodes_per_unit_time = 64;
  int samples = 10000;
  double slope_max = 0.6;
  double tail_shape_min = 1.8;  // log-log slope of -log P(X > lambda) against lambda
  unsigned threads = 1;

  void validate() const {
    require(dim >= 1 && dim <= 3, errc::constraint_violation, "prob-strichartz: dim must be 1, 2 or 3");
    require(s > 0.0 && s < 1.0, errc::constraint_violation, "prob-strichartz: s must lie in (0, 1)");
    require(p1 >= 1.0 && p2 >= 1.0, errc::constraint_violation, "prob-strichartz: exponents must be >= 1");
    require(delta * p1 > p1 + 1.0, errc::constraint_violation,
            "prob-strichartz: need delta > 1 + 1/p1 so the weighted tail beyond t_max is finite");
    require(t_max > 0.0 && nodes_per_unit_time >= 1, errc::constraint_violation, "prob-strichartz: bad time grid");
    require(samples >= 100, errc::constraint_violation, "prob-strichartz: at least 100 samples are required");
    require(p_list.size() >= 2, errc::constraint_violation, "prob-strichartz: need at least two moment exponents");
    require(!distributions.empty(), errc::constraint_violation, "prob-strichartz: no distribution given");
  }
};

namespace detail {

// Free evolution in L^2_x grouped by shells |k|^2 = m: per shell the
// squared norm is A cos^2 + B sin^2 / w^2 + 2 C cos sin / w (w = sqrt m),
// and A + 2 C t + B t^2 on the zero shell.
class ShellEvolution {
 public:
  ShellEvolution(const ModeGrid& g, const std::vector<double>& times) : times_(times) {
    std::map<long, std::size_t> index;
    g.for_each_mode([&](std::size_t, const Wavevector& k, double) {
      const long m = static_cast<long>(k[0]) * k[0] + static_cast<long>(k[1]) * k[1] + static_cast<long>(k[2]) * k[2];
      index.emplace(m, 0);
    });
    for (auto& [m, slot] : index) {
      slot = shells_.size();
      shells_.push_back(m);
    }
    shell_of_.resize(g.mode_count());
    g.for_each_mode([&](std::size_t i, const Wavevector& k, double) {
      const long m = static_cast<long>(k[0]) * k[0] + static_cast<long>(k[1]) * k[1] + static_cast<long>(k[2]) * k[2];
      shell_of_[i] = index[m];
    });
    const std::size_t ns = shells_.size();
    cc_.resize(times.size() * ns);
    ss_.resize(times.size() * ns);
    cs_.resize(times.size() * ns);
    for (std::size_t j = 0; j < times.size(); ++j)
      for (std::size_t q = 0; q < ns; ++q) {
        const double t = times[j];
        double c, sn;
        if (shells_[q] == 0) {
          c = 1.0;
          sn = t;  // sin(t w)/w at w = 0
        } else {
          const double w = std::sqrt(static_cast<double>(shells_[q]));
          c = std::cos(t * w);
          sn = std::sin(t * w) / w;
        }
        cc_[j * ns + q] = c * c;
        ss_[j * ns + q] = sn * sn;
        cs_[j * ns + q] = 2.0 * c * sn;
      }
  }

  /// ||S(t_j)(u0,u1)||_{L^2}^2 for every time node.
  std::vector<double> squared_norms(const StatePair& x) const {
    const std::size_t ns = shells_.size();
    std::vector<double> a(ns, 0.0), b(ns, 0.0), c(ns, 0.0);
    for (std::size_t i = 0; i < shell_of_.size(); ++i) {
      const std::size_t q = shell_of_[i];
      a[q] += std::norm(x.u[i]);
      b[q] += std::norm(x.v[i]);
      c[q] += (x.u[i] * std::conj(x.v[i])).real();
    }
    std::vector<double> out(times_.size());
    for (std::size_t j = 0; j < times_.size(); ++j) {
      double acc = 0.0;
      const std::size_t o = j * ns;
      for (std::size_t q = 0; q < ns; ++q) acc += a[q] * cc_[o + q] + b[q] * ss_[o + q] + c[q] * cs_[o + q];
      out[j] = std::max(acc, 0.0);
    }
    return out;
  }

 private:
  std::vector<double> times_;
  std::vector<long> shells_;
  std::vector<std::size_t> shell_of_;
  std::vector<double> cc_, ss_, cs_;
};

}  // namespace detail

inline ExperimentReport run_prob_strichartz(const ProbStrichartzConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ExperimentReport rep;
  WallClock clock(rep);
  rep.name = "prob-strichartz";
  rep.seed = seed;
  rep.rows = CsvTable({"section", "distribution", "x", "value", "se"});

  const ModeGrid g(cfg.dim, cfg.modes, cfg.modes);
  const StatePair base = power_law_pair(g, cfg.s, cfg.eps, false);
  const double base_norm = energy_space_norm(base, cfg.s);
  rep.extra["base_norm_Hs"] = base_norm;

  const int nodes = static_cast<int>(std::ceil(cfg.nodes_per_unit_time * cfg.t_max));
  std::vector<double> times(nodes + 1), weights(nodes + 1);
  for (int j = 0; j <= nodes; ++j) {
    times[j] = cfg.t_max * j / nodes;
    const double tw = (j == 0 || j == nodes ? 0.5 : 1.0) * cfg.t_max / nodes;
    weights[j] = tw * std::pow(1.0 + times[j] * times[j], -0.5 * cfg.delta * cfg.p1);
  }
  std::optional<detail::ShellEvolution> shells;
  if (cfg.p2 == 2.0) shells.emplace(g, times);
  const ModeGrid phys = ModeGrid::dealiased(cfg.dim, cfg.modes, 2.0);

  // |S(t)X| <= <t> (|u0_k| + sqrt2 |u1_k| / <k>) per mode, so beyond t_max
  // the weighted L^p1 tail is at most K^p1 t_max^{(1-delta)p1+1} / ((delta-1)p1 - 1)
  const auto tail_bound = [&](const StatePair& x) {
    const double k = sobolev_norm(x.u, 0.0) + std::sqrt(2.0) * sobolev_norm(x.v, -1.0);
    const double e = (cfg.delta - 1.0) * cfg.p1 - 1.0;
    return std::pow(k, cfg.p1) * std::pow(cfg.t_max, -e) / e;
  };

  bool all_slopes = true, all_shapes = true;
  double worst_tail = 0.0;
  for (const auto& name : cfg.distributions) {
    const auto dist = CoefficientDistribution::parse(name);
    const SeedSpec spec{seed, "prob-strichartz/" + name};
    struct Sample {
      double norm, tail;
    };
    const auto values = parallel_map(static_cast<std::size_t>(cfg.samples), cfg.threads, [&](std::size_t i) {
      const StatePair x = randomize_pair(base, dist, spec.sample(i));
      std::vector<double> lq(times.size());
      if (shells) {
        const auto sq = shells->squared_norms(x);
        for (std::size_t j = 0; j < sq.size(); ++j) lq[j] = std::sqrt(sq[j]);
      } else {
        const StatePair y{regrid(x.u, phys), regrid(x.v, phys)};
        for (std::size_t j = 0; j < times.size(); ++j) lq[j] = lebesgue_norm(free_evolve(y, times[j]).u, cfg.p2);
      }
      double acc = 0.0;
      for (std::size_t j = 0; j < lq.size(); ++j) acc += weights[j] * std::pow(lq[j], cfg.p1);
      const double tail = tail_bound(x);
      return Sample{std::pow(acc, 1.0 / cfg.p1), std::pow(acc + tail, 1.0 / cfg.p1) - std::pow(acc, 1.0 / cfg.p1)};
    });
    std::vector<double> xs;
    for (const auto& v : values) {
      xs.push_back(v.norm);
      worst_tail = std::max(worst_tail, v.tail / std::max(v.norm, 1e-300));
    }

    const auto fit = moment_slope(xs, cfg.p_list);
    for (const auto& pt : fit.points) rep.rows.add_row({std::string("moment"), name, pt.p, pt.norm, pt.se});
    rep.rows.add_row({std::string("slope"), name, 0.0, fit.slope, fit.slope_se});

    // Gaussian-shape tail test on lambda / ||base|| from the median to the
    // level with at least 10 exceedances
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted[sorted.size() / 2], hi = sorted[sorted.size() - 11];
    std::vector<double> lams;
    for (int j = 0; j < 16; ++j) lams.push_back(lo + (hi - lo) * j / 15.0);
    const auto tails = tail_estimate(xs, lams);
    std::vector<double> lx, ly;
    for (const auto& tp : tails) {
      rep.rows.add_row({std::string("tail"), name, tp.lambda / base_norm, tp.survival, tp.se});
      if (tp.survival > 0.0 && tp.survival < 1.0) {
        lx.push_back(std::log(tp.lambda / base_norm));
        ly.push_back(std::log(-std::log(tp.survival)));
      }
    }
    const double shape = lx.size() >= 2 ? fitted_slope(lx, ly) : 0.0;
    rep.rows.add_row({std::string("tail_shape"), name, 0.0, shape, 0.0});
    // the constant c in P(X > lambda) <= 2 exp(-c lambda^2 / ||base||^2), fitted over the grid
    double c_fit = HUGE_VAL;
    for (const auto& tp : tails)
      if (tp.survival > 0.0) c_fit = std::min(c_fit, -std::log(tp.survival / 2.0) * base_norm * base_norm / (tp.lambda * tp.lambda));
    rep.extra["gaussian_tail_constant_" + name] = c_fit;
    rep.extra["moment_slope_" + name] = fit.slope;

    const bool slope_ok = fit.slope <= cfg.slope_max;
    const bool shape_ok = shape >= cfg.tail_shape_min && c_fit > 0.0;
    all_slopes = all_slopes && slope_ok;
    all_shapes = all_shapes && shape_ok;
    rep.add_verdict("C6", "moment slope <= " + format_number(cfg.slope_max) + " (" + name + ")", slope_ok, fit.slope, cfg.slope_max,
                    "slope of log ||X||_{L^p} against log p");
    rep.add_verdict("C6", "Gaussian tail shape (" + name + ")", shape_ok, shape, cfg.tail_shape_min,
                    "log-log slope of -log P(X > lambda)");
  }
  rep.extra["max_relative_truncation_tail"] = worst_tail;
  rep.extra["all_slopes_pass"] = all_slopes;
  rep.extra["all_tail_shapes_pass"] = all_shapes;
  return rep;
}

}  // namespace nlw

#endif
