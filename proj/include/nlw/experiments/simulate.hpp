#ifndef NLW_EXPERIMENTS_SIMULATE_HPP
#define NLW_EXPERIMENTS_SIMULATE_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nlw/diagnostics/energy.hpp"
#include "nlw/experiments/common.hpp"
#include "nlw/experiments/report.hpp"
#include "nlw/io/snapshot.hpp"
#include "nlw/propagator/picard.hpp"
#include "nlw/randomize/samplers.hpp"
#include "nlw/solver/local.hpp"
#include "nlw/solver/split.hpp"

namespace nlw {

/// Initial data shared by the simulate and picard runners.
struct DataConfig {
  int dim = 2;
  int modes = 32;
  double dealias = 2.0;
  // zero | power-law | mu-sd | snapshot
  std::string data = "power-law";
  std::string snapshot_path;
  double s = 0.4;
  double eps = 0.1;
  std::string distribution = "gaussian";
  double amplitude = 1.0;

  void validate() const {
    require(dim >= 1 && dim <= 3, errc::constraint_violation, "data: dim must be 1, 2 or 3");
    require(modes >= 2 && modes % 2 == 0, errc::constraint_violation, "data: modes must be even and >= 2");
    require(dealias >= 1.5, errc::constraint_violation, "data: dealias must be >= 1.5");
    require(data == "zero" || data == "power-law" || data == "mu-sd" || data == "snapshot", errc::constraint_violation,
            "data: kind must be zero, power-law, mu-sd or snapshot");
    require(data != "snapshot" || !snapshot_path.empty(), errc::constraint_violation, "data: snapshot kind needs snapshot_path");
    CoefficientDistribution::parse(distribution);
  }

  StatePair make(std::uint64_t seed, const std::string& stream) const {
    const ModeGrid g = ModeGrid::dealiased(dim, modes, dealias);
    const CounterRng rng = SeedSpec{seed, stream}.sample(0);
    StatePair x;
    if (data == "zero") {
      x = StatePair::zero(g);
    } else if (data == "power-law") {
      x = randomize_pair(power_law_pair(g, s, eps, false), CoefficientDistribution::parse(distribution), rng);
    } else if (data == "mu-sd") {
      x = sample_mu_sd(s, g, rng);
    } else {
      x = read_snapshot(snapshot_path);
    }
    return amplitude * x;
  }
};

struct SimulateConfig {
  DataConfig data;
  double T = 1.0;
  double dt = 1e-3;
  bool nonlinear = true;
  int truncation = -1;  // < 0: full flow
  int observe_every = 10;
  std::vector<double> sobolev{0.0, 1.0};
  int snapshot_every = 0;  // in observations; 0 disables
  double drift_tolerance = 1e-4;

  void validate() const {
    data.validate();
    require(T >= 0.0 && dt > 0.0 && observe_every >= 1 && snapshot_every >= 0, errc::constraint_violation,
            "simulate: need T >= 0, dt > 0, observe_every >= 1 and snapshot_every >= 0");
    require(drift_tolerance >= 0.0, errc::constraint_violation, "simulate: drift tolerance must be >= 0");
  }
};

inline ExperimentReport run_simulate(const SimulateConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ExperimentReport rep;
  WallClock clock(rep);
  rep.name = "simulate";
  rep.seed = seed;
  std::vector<std::string> cols{"t", "H"};
  for (double s : cfg.sobolev) {
    cols.push_back("u_H" + format_number(s));
    cols.push_back("v_H" + format_number(s - 1.0));
  }
  rep.rows = CsvTable(cols);

  const StatePair x0 = cfg.data.make(seed, "simulate");
  SolveConfig sc;
  sc.dt = cfg.dt;
  sc.nonlinear = cfg.nonlinear;
  const bool truncated = cfg.truncation >= 0;
  const auto conserved = [&](const StatePair& x) {
    if (!cfg.nonlinear) return 0.5 * (std::pow(sobolev_norm(x.v, 0), 2) + std::pow(gradient_norm(x.u), 2));
    return truncated ? truncated_energy(x, cfg.truncation) : energy(x);
  };
  double h0 = 0.0, drift = 0.0;
  int obs_index = 0;
  const StepObserver obs = [&](double t, const StatePair& x) {
    const double h = conserved(x);
    if (obs_index == 0) h0 = h;
    drift = std::max(drift, std::abs(h - h0));
    std::vector<CsvTable::Cell> row{t, h};
    for (double s : cfg.sobolev) {
      row.emplace_back(sobolev_norm(x.u, s));
      row.emplace_back(sobolev_norm(x.v, s - 1.0));
    }
    rep.rows.add_row(std::move(row));
    if (cfg.snapshot_every > 0 && obs_index % cfg.snapshot_every == 0) {
      char name[40];
      std::snprintf(name, sizeof name, "snapshot_%06d.bin", obs_index);
      rep.files.emplace_back(name, snapshot_bytes(x));
    }
    ++obs_index;
  };
  if (truncated)
    truncated_flow(x0, cfg.truncation, cfg.T, sc, obs, cfg.observe_every);
  else
    evolve_split(x0, cfg.T, sc, obs, cfg.observe_every);

  const double rel = h0 > 0.0 ? drift / h0 : drift;
  rep.extra["initial_energy"] = h0;
  rep.extra["max_energy_drift"] = drift;
  rep.extra["grid"] = {{"dim", x0.grid().dim}, {"M", x0.grid().modes}, {"P", x0.grid().points}};
  rep.add_verdict("C1", "relative energy drift within tolerance", rel <= cfg.drift_tolerance, rel, cfg.drift_tolerance);
  return rep;
}

struct PicardConfig {
  DataConfig data{2, 16, 2.0, "power-law", "", 1.5, 0.1, "gaussian", 1.0};
  int iterations = 12;
  double window = 0.0;  // 0: adaptive contraction window
  int panels = 8;
  int quad_points = 4;
  int split_substeps = 64;  // splitting steps per panel for the cross-check
  double agreement_tolerance = 1e-8;
  double split_tolerance = 1e-6;

  void validate() const {
    data.validate();
    require(iterations >= 2 && window >= 0.0 && panels >= 1 && quad_points >= 1 && split_substeps >= 1, errc::constraint_violation,
            "picard: need iterations >= 2, window >= 0 and positive panel counts");
  }
};

inline ExperimentReport run_picard(const PicardConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ExperimentReport rep;
  WallClock clock(rep);
  rep.name = "picard";
  rep.seed = seed;
  rep.rows = CsvTable({"k", "increment", "distance_to_local"});

  const StatePair x0 = cfg.data.make(seed, "picard");
  SolveConfig sc;
  sc.panels = cfg.panels;
  sc.quad_points = cfg.quad_points;
  const LocalSolution sol = cfg.window > 0.0 ? local_solve(x0, std::nullopt, cfg.window, sc) : local_solve_adaptive(x0, std::nullopt, sc);
  const TimeGrid& tg = sol.grid;

  const auto seq = picard_sequence(x0, cfg.iterations, tg);
  std::vector<double> inc;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    const double d = k + 1 < seq.size() ? sup_h1_distance(seq[k + 1], seq[k]) : std::numeric_limits<double>::quiet_NaN();
    if (k + 1 < seq.size()) inc.push_back(d);
    rep.rows.add_row({static_cast<long long>(k), d, sup_h1_distance(seq[k], sol.trajectory)});
  }
  // ratios of successive increments above the round-off floor
  const double floor = 1e-13 * (1.0 + sobolev_norm(x0.u, 1.0));
  double worst_ratio = 0.0;
  for (std::size_t k = 1; k < inc.size(); ++k)
    if (inc[k - 1] > 100.0 * floor) worst_ratio = std::max(worst_ratio, inc[k] / inc[k - 1]);
  const double agreement = sup_h1_distance(seq.back(), sol.trajectory);

  // Strang splitting sampled at the panel endpoints.
  SolveConfig split = sc;
  split.dt = tg.step() / cfg.split_substeps;
  double split_gap = 0.0;
  int panel = 0;
  evolve_split(x0, tg.t1, split, [&](double, const StatePair& x) {
    split_gap = std::max(split_gap, sobolev_norm(x.u - sol.trajectory.states[tg.endpoint_node(panel)].u, 1.0));
    ++panel;
  }, cfg.split_substeps);

  rep.extra["window"] = tg.t1;
  rep.extra["local_iterations"] = sol.iterations;
  rep.extra["contraction"] = sol.contraction;
  rep.extra["worst_increment_ratio"] = worst_ratio;
  rep.add_verdict("C2", "Picard increments decay geometrically", worst_ratio < 1.0 && inc.back() < inc.front(), worst_ratio, 1.0);
  rep.add_verdict("C2", "last Picard iterate matches the local solution", agreement <= cfg.agreement_tolerance, agreement,
                  cfg.agreement_tolerance);
  rep.add_verdict("C2", "splitting matches the local solution in sup_t H^1", split_gap <= cfg.split_tolerance, split_gap,
                  cfg.split_tolerance);
  return rep;
}

}  // namespace nlw

#endif
