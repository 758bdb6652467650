#ifndef NLW_EXPERIMENTS_GIBBS_HPP
#define NLW_EXPERIMENTS_GIBBS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "nlw/core/parallel.hpp"
#include "nlw/diagnostics/statistics.hpp"
#include "nlw/experiments/report.hpp"
#include "nlw/randomize/rejection.hpp"
#include "nlw/randomize/samplers.hpp"
#include "nlw/solver/radial.hpp"

namespace nlw {

struct GibbsInvarianceConfig {
  double alpha = 2.0;
  int modes = 64;
  int truncation = 32;
  int points = 0;
  double t = 1.0;
  double dt = 0.01;
  int samples = 5000;
  std::string measure = "gibbs";  // or "free"
  bool nonlinear = true;
  double se_factor = 3.0;
  std::uint64_t max_proposals = 1u << 20;
  unsigned threads = 1;

  void validate() const {
    require(alpha > 0.0 && alpha < 4.0, errc::alpha_out_of_range, "gibbs-invariance: need 0 < alpha < 4");
    require(truncation >= 1 && truncation <= modes, errc::constraint_violation, "gibbs-invariance: need 1 <= N <= M");
    require(measure == "gibbs" || measure == "free", errc::constraint_violation, "gibbs-invariance: measure must be gibbs or free");
    require(samples >= 2 && dt > 0.0 && t >= 0.0, errc::constraint_violation, "gibbs-invariance: bad samples, dt or t");
  }
};

/// Observables compared before and after the flow.
inline std::vector<std::string> gibbs_observable_names() {
  return {"re_u_l2_sq", "re_uN_lp_pow", "a1_sq", "a2_sq", "aN_sq", "b1_sq", "b2_sq", "a1_b1"};
}

inline std::vector<double> gibbs_observables(const RadialState& x, double alpha, int n_trunc) {
  double l2 = 0.0;
  for (double a : x.a) l2 += 0.5 * a * a;
  const int n = n_trunc - 1;
  return {l2,
          0.5 * (alpha + 2.0) * radial_potential(x, alpha, n_trunc),
          x.a[0] * x.a[0],
          x.a[1] * x.a[1],
          x.a[n] * x.a[n],
          x.b[0] * x.b[0],
          x.b[1] * x.b[1],
          x.a[0] * x.b[0]};
}

inline ExperimentReport run_gibbs_invariance(const GibbsInvarianceConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ExperimentReport rep;
  WallClock clock(rep);
  rep.name = "gibbs-invariance";
  rep.seed = seed;
  rep.rows = CsvTable({"observable", "mean_before", "se_before", "mean_after", "se_after", "shift", "combined_se", "control_shift"});

  GibbsSpec spec;
  spec.alpha = cfg.alpha;
  spec.truncation = cfg.truncation;
  spec.modes = cfg.modes;
  spec.points = cfg.points;
  spec.max_proposals = cfg.max_proposals;
  const SeedSpec seeds{seed, "gibbs-invariance/" + cfg.measure};
  SolveConfig sc;
  sc.dt = cfg.dt;
  sc.nonlinear = cfg.nonlinear;
  const double flow_alpha = std::min(cfg.alpha, 3.0);
  require(!cfg.nonlinear || cfg.alpha <= 3.0, errc::alpha_out_of_range, "gibbs-invariance: the radial flow supports alpha <= 3");

  struct Sample {
    std::vector<double> before, after, control;
    std::uint64_t proposals;
  };
  const auto runs = parallel_map(static_cast<std::size_t>(cfg.samples), cfg.threads, [&](std::size_t i) {
    RadialState x;
    std::uint64_t proposals = 1;
    if (cfg.measure == "gibbs") {
      auto acc = sample_gibbs(spec, seeds.sample(i));
      x = std::move(acc.state);
      proposals = acc.proposals;
    } else {
      x = sample_radial_free(cfg.modes, seeds.sample(i), cfg.points);
    }
    Sample s;
    s.before = gibbs_observables(x, cfg.alpha, cfg.truncation);
    s.control = gibbs_observables(radial_evolve(x, flow_alpha, cfg.truncation, 0.0, sc), cfg.alpha, cfg.truncation);
    s.after = gibbs_observables(radial_evolve(x, flow_alpha, cfg.truncation, cfg.t, sc), cfg.alpha, cfg.truncation);
    s.proposals = proposals;
    return s;
  });

  const auto names = gibbs_observable_names();
  std::uint64_t proposals = 0;
  for (const auto& r : runs) proposals += r.proposals;
  bool all_within = true, control_exact = true;
  double worst = 0.0;
  for (std::size_t k = 0; k < names.size(); ++k) {
    std::vector<double> b, a, c;
    for (const auto& r : runs) {
      b.push_back(r.before[k]);
      a.push_back(r.after[k]);
      c.push_back(r.control[k]);
    }
    const auto eb = mean_and_se(b), ea = mean_and_se(a), ec = mean_and_se(c);
    const double shift = ea.mean - eb.mean, se = std::hypot(eb.se, ea.se);
    const double control = ec.mean - eb.mean;
    rep.rows.add_row({names[k], eb.mean, eb.se, ea.mean, ea.se, shift, se, control});
    const double z = se > 0.0 ? std::abs(shift) / se : (shift == 0.0 ? 0.0 : HUGE_VAL);
    worst = std::max(worst, z);
    all_within = all_within && z <= cfg.se_factor;
    control_exact = control_exact && control == 0.0;
  }
  rep.extra["acceptance_rate"] = static_cast<double>(cfg.samples) / static_cast<double>(proposals);
  rep.extra["proposals"] = proposals;
  rep.extra["max_shift_in_se"] = worst;
  rep.add_verdict("C9", "every observable shift within " + format_number(cfg.se_factor) + " combined standard errors", all_within,
                  worst, cfg.se_factor);
  rep.add_verdict("C9", "t = 0 control reproduces the ensemble exactly", control_exact, 0.0, 0.0);
  return rep;
}

}  // namespace nlw

#endif
