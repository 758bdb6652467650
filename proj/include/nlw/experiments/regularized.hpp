#ifndef NLW_EXPERIMENTS_REGULARIZED_HPP
#define NLW_EXPERIMENTS_REGULARIZED_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nlw/core/parallel.hpp"
#include "nlw/experiments/common.hpp"
#include "nlw/experiments/report.hpp"
#include "nlw/propagator/free.hpp"
#include "nlw/randomize/samplers.hpp"
#include "nlw/solver/split.hpp"
#include "nlw/spectral/norms.hpp"

namespace nlw {

/// Fourier-multiplier approximate identity rho_n.
struct Mollifier {
  enum class Kind { identity, sharp, fejer };
  Kind kind = Kind::sharp;
  double n = 1.0;

  static Kind parse(const std::string& name) {
    if (name == "identity") return Kind::identity;
    if (name == "sharp") return Kind::sharp;
    if (name == "fejer") return Kind::fejer;
    fail(errc::invalid_argument, "unknown mollifier '" + name + "' (expected identity, sharp or fejer)");
  }

  static std::string name(Kind k) {
    switch (k) {
      case Kind::identity: return "identity";
      case Kind::sharp: return "sharp";
      case Kind::fejer: return "fejer";
    }
    return "";
  }

  /// 1 on |k| <= n (sharp), (1 - |k|/n)_+ (fejer)
  double operator()(double k2) const {
    switch (kind) {
      case Kind::identity: return 1.0;
      case Kind::sharp: return k2 <= n * n ? 1.0 : 0.0;
      case Kind::fejer: return std::max(0.0, 1.0 - std::sqrt(k2) / n);
    }
    return 0.0;
  }

  StatePair apply(const StatePair& x) const { return {apply_multiplier(*this, x.u), apply_multiplier(*this, x.v)}; }
};

struct RegularizedConfig {
  int dim = 3;
  int modes = 32;
  double s = 0.3;
  double eps = 0.1;
  std::string distribution = "gaussian";
  std::vector<std::string> mollifiers{"sharp", "fejer"};
  std::vector<int> n_list{4, 8, 16, 32};
  double T = 1.0;
  double dt = 0.01;
  double commutation_tolerance = 1e-14;
  unsigned threads = 1;

  void validate() const {
    require(dim >= 1 && dim <= 3, errc::dimension_mismatch, "regularized-convergence: dim must be 1, 2 or 3");
    require(s > 0.0 && s < 1.0, errc::constraint_violation, "regularized-convergence: need 0 < s < 1");
    require(T > 0.0 && dt > 0.0, errc::constraint_violation, "regularized-convergence: T and dt must be positive");
    require(n_list.size() >= 2, errc::constraint_violation, "regularized-convergence: need at least two cutoffs");
    for (std::size_t i = 0; i < n_list.size(); ++i)
      require(n_list[i] >= 1 && (i == 0 || n_list[i] > n_list[i - 1]), errc::constraint_violation,
              "regularized-convergence: cutoffs must be positive and increasing");
    for (const auto& m : mollifiers) Mollifier::parse(m);
  }
};

inline double hs_distance(const StatePair& a, const StatePair& b, double s) { return energy_space_norm(a - b, s); }

inline ExperimentReport run_regularized_convergence(const RegularizedConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ExperimentReport rep;
  WallClock clock(rep);
  rep.name = "regularized-convergence";
  rep.seed = seed;
  rep.rows = CsvTable({"mollifier", "n", "sup_distance", "distance_at_T", "data_distance", "commutation_error"});

  const ModeGrid g = ModeGrid::dealiased(cfg.dim, cfg.modes);
  const StatePair data = randomize_pair(power_law_pair(g, cfg.s, cfg.eps, false), CoefficientDistribution::parse(cfg.distribution),
                                        SeedSpec{seed, "regularized-convergence"}.sample(0));
  SolveConfig sc;
  sc.dt = cfg.dt;
  const int steps = detail::step_count(cfg.T, cfg.dt);

  std::vector<StatePair> reference;
  reference.reserve(steps + 1);
  evolve_split(data, cfg.T, sc, [&](double, const StatePair& x) { reference.push_back(x); });
  const StatePair linear = free_evolve(data, cfg.T);

  struct Job {
    Mollifier rho;
  };
  std::vector<Job> jobs{{Mollifier{Mollifier::Kind::identity, 0.0}}};
  for (const auto& m : cfg.mollifiers)
    for (int n : cfg.n_list) jobs.push_back({Mollifier{Mollifier::parse(m), static_cast<double>(n)}});

  struct Result {
    double sup = 0.0, at_T = 0.0, data = 0.0, commutation = 0.0;
  };
  const auto results = parallel_map(jobs.size(), cfg.threads, [&](std::size_t j) {
    const Mollifier& rho = jobs[j].rho;
    const StatePair xn = rho.apply(data);
    Result r;
    r.data = hs_distance(xn, data, cfg.s);
    std::size_t k = 0;
    evolve_split(xn, cfg.T, sc, [&](double, const StatePair& x) {
      const double d = hs_distance(x, reference[k++], cfg.s);
      r.sup = std::max(r.sup, d);
      r.at_T = d;
    });
    // S(t) rho_n = rho_n S(t) for multipliers
    const StatePair lhs = free_evolve(xn, cfg.T), rhs = rho.apply(linear);
    r.commutation = std::max((lhs.u - rhs.u).max_abs(), (lhs.v - rhs.v).max_abs());
    return r;
  });

  double worst_commutation = 0.0;
  nlohmann::json at_t = nlohmann::json::object();
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto& r = results[j];
    const std::string name = Mollifier::name(jobs[j].rho.kind);
    rep.rows.add_row({name, j == 0 ? CsvTable::Cell{""} : CsvTable::Cell{static_cast<long long>(jobs[j].rho.n)}, r.sup, r.at_T, r.data, r.commutation});
    worst_commutation = std::max(worst_commutation, r.commutation);
    if (j > 0) at_t[name].push_back(r.at_T);
  }
  rep.extra["distance_at_T"] = at_t;
  rep.add_verdict("C11", "identity mollifier reproduces the reference exactly", results[0].sup == 0.0, results[0].sup, 0.0);
  rep.add_verdict("C11", "free flow commutes with the mollifier", worst_commutation <= cfg.commutation_tolerance, worst_commutation,
                  cfg.commutation_tolerance);
  std::size_t j = 1;
  for (const auto& m : cfg.mollifiers) {
    std::vector<double> d;
    for (std::size_t k = 0; k < cfg.n_list.size(); ++k) d.push_back(results[j++].at_T);
    rep.add_verdict("C11", m + " distance at T strictly decreasing in n", strictly_decreasing(d), d.back(), d.front());
  }
  return rep;
}

}  // namespace nlw

#endif
