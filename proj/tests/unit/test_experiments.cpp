#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "nlw/experiments.hpp"

using namespace nlw;
using Catch::Approx;

namespace {

double cell_double(const CsvTable& t, std::size_t row, std::size_t col) { return std::get<double>(t.rows()[row][col]); }

// Radial Fourier transform on R^d against dx/(2pi)^d, by tanh-sinh in r.
double radial_ft_oracle(int d, double rho0, const std::function<double(double)>& h, double rho) {
  constexpr double pi = std::numbers::pi;
  boost::math::quadrature::tanh_sinh<double> ts;
  auto kernel = [&](double r) {
    const double z = rho * r;
    if (d == 1) return 2.0 * h(r) * std::cos(z);
    if (d == 2) return 2.0 * pi * r * h(r) * std::cyl_bessel_j(0.0, std::abs(z));
    return 4.0 * pi * r * r * h(r) * (z == 0.0 ? 1.0 : std::sin(z) / z);
  };
  return ts.integrate(kernel, 0.0, rho0) / std::pow(2.0 * pi, d);
}

}  // namespace

TEST_CASE("power-law pair", "[experiments]") {
  const ModeGrid g = ModeGrid::dealiased(2, 16);
  const double s = 0.4, eps = 0.1;
  const StatePair x = power_law_pair(g, s, eps, true);
  CHECK(x.u[0] == cplx(0.0));
  g.for_each_mode([&](std::size_t i, const Wavevector& k, double n2) {
    if (g.is_nyquist(k) || n2 == 0.0) return;
    CHECK(std::abs(x.u[i]) == Approx(std::pow(1.0 + n2, -(s + 1.0 + eps) / 2)).epsilon(1e-14));
    CHECK(std::abs(x.v[i]) == Approx(std::pow(1.0 + n2, -(s + eps) / 2)).epsilon(1e-14));
    CHECK(x.u[i] == std::conj(x.u[g.index_of(negate(k))]));
  });
  CHECK(power_law_pair(g, s, eps, false).u[0].real() == 1.0);
}

TEST_CASE("inflation parameters", "[experiments][inflation]") {
  InflationConfig c;
  for (int n : {4, 8, 32}) {
    CHECK(c.amplitude(n) * c.t_n(n) == Approx(std::pow(std::log(n), c.delta2 - c.delta1)).epsilon(1e-13));
    CHECK(c.kappa(n) == Approx(std::pow(std::log(n), -0.1)));
  }
  CHECK(c.lower_bound_exponent() == Approx(-1.3 * 0.1 + 0.3 * 0.4));
  c.delta1 = 0.5;
  CHECK_THROWS_AS(c.validate(), error);
  c = InflationConfig{};
  c.s = 0.6;
  CHECK_THROWS_AS(c.validate(), error);
}

TEST_CASE("dilated radial norm: transform against a quadrature oracle", "[experiments][inflation]") {
  const BumpSpec phi;
  const auto h = [&](double r) { return phi.radial(r); };
  for (int d : {1, 2, 3}) {
    const DilatedRadialNorm dn(d, phi.rho0);
    const std::vector<double> rho{0.0, 1.3, 7.0, 20.5};
    const auto [val, der] = dn.transform(h, rho);
    for (std::size_t i = 0; i < rho.size(); ++i) {
      CHECK(val[i] == Approx(radial_ft_oracle(d, phi.rho0, h, rho[i])).margin(1e-12));
      const double e = 1e-5;
      const double fd = (radial_ft_oracle(d, phi.rho0, h, rho[i] + e) - radial_ft_oracle(d, phi.rho0, h, rho[i] - e)) / (2 * e);
      CHECK(der[i] == Approx(fd).margin(1e-8));
    }
  }
}

TEST_CASE("dilated radial norm: lattice counts and grid cross-check", "[experiments][inflation]") {
  const DilatedRadialNorm dn(3, std::numbers::pi / 2);
  const long kmax = 6;
  const auto& counts = dn.lattice_counts(kmax);
  std::vector<std::uint32_t> brute(kmax * kmax + 1, 0);
  for (long a = -kmax; a <= kmax; ++a)
    for (long b = -kmax; b <= kmax; ++b)
      for (long c = -kmax; c <= kmax; ++c)
        if (a * a + b * b + c * c <= kmax * kmax) ++brute[a * a + b * b + c * c];
  for (long m = 0; m <= kmax * kmax; ++m) CHECK(counts[m] == brute[m]);

  // the grid path truncates at |k_i| < M/2, so agreement is at the 1% level
  const BumpSpec phi;
  const int n = 2;
  const ModeGrid g(3, 32, 32);
  const double grid = sobolev_norm(bump_dilate(phi, n, g), 0.3);
  CHECK(dn.norm([&](double r) { return phi.radial(r); }, n, 0.3, 48.0) == Approx(grid).epsilon(1e-2));
}

TEST_CASE("ansatz at t = 0 is the amplitude times the bump", "[experiments][inflation]") {
  const BumpSpec phi;
  const ModeGrid g(2, 32, 32);
  const StatePair x = ansatz_on_grid(phi, 2, 1.7, 0.0, g);
  const SpectralField ref = 1.7 * bump_dilate(phi, 2, g);
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(x.u[i] - ref[i]) < 1e-14);
  CHECK(x.v.max_abs() == 0.0);
  CHECK(ansatz_profile(phi, 1.7, 0.0)(0.3) == Approx(1.7 * phi.radial(0.3)).epsilon(1e-15));
}

TEST_CASE("inflation closed form never calls the PDE solver", "[experiments][inflation]") {
  InflationConfig c;
  c.n_list = {4, 8};
  c.xi_max = 16;
  const long before = inflation_pde_calls().load();
  const auto rep = run_inflation(c);
  CHECK(inflation_pde_calls().load() == before);
  CHECK(rep.rows.size() == 2);
  CHECK(rep.extra["closed_form_pde_calls"] == 0);
}

TEST_CASE("shell aggregation equals the free evolution norm", "[experiments][strichartz]") {
  const ModeGrid g = ModeGrid::dealiased(3, 8);
  const StatePair x = randomize_pair(power_law_pair(g, 0.4, 0.1, false), CoefficientDistribution{}, CounterRng(9));
  const std::vector<double> times{0.0, 0.37, 2.0, 11.25};
  const auto sq = detail::ShellEvolution(g, times).squared_norms(x);
  for (std::size_t j = 0; j < times.size(); ++j)
    CHECK(sq[j] == Approx(std::pow(sobolev_norm(free_evolve(x, times[j]).u, 0), 2)).epsilon(1e-12));
}

TEST_CASE("prob-strichartz: small run is deterministic across thread counts", "[experiments][strichartz]") {
  ProbStrichartzConfig c;
  c.modes = 8;
  c.samples = 200;
  c.t_max = 2.0;
  c.nodes_per_unit_time = 16;
  c.p_list = {2, 4, 8};
  const auto a = run_prob_strichartz(c, 3);
  c.threads = 3;
  const auto b = run_prob_strichartz(c, 3);
  CHECK(a.rows.str() == b.rows.str());
  CHECK(a.verdicts.size() >= 2);
}

TEST_CASE("remainder: zero data and the initial conditions", "[experiments][remainder]") {
  RemainderConfig c;
  c.modes = 8;
  c.T = 0.5;
  c.dt = 0.01;
  const ModeGrid g = ModeGrid::dealiased(3, 8);
  for (const auto& p : remainder_trajectory(StatePair::zero(g), c)) {
    CHECK(p.energy == 0.0);
    CHECK(p.rate == 0.0);
  }
  const StatePair x = randomize_pair(power_law_pair(g, 0.4, 0.1, true), CoefficientDistribution{}, CounterRng(4));
  const auto traj = remainder_trajectory(x, c);
  CHECK(traj.front().t == 0.0);
  CHECK(traj.front().w0 == 0.0);
  CHECK(traj.front().energy == 0.0);
}

TEST_CASE("remainder: short-time ratio limit", "[experiments][remainder]") {
  // w ~ -t^2 c/2 with c the dealiased cube of u0, so
  // dE/dt / (E^{1/2} ||u0||_{L^6}^3) -> sqrt2 ||c|| / ||u0^3|| <= sqrt2
  RemainderConfig c;
  c.modes = 8;
  c.T = 2e-3;
  c.dt = 1e-5;
  c.observe_every = 10;
  const ModeGrid g = ModeGrid::dealiased(3, 8);
  const StatePair x = randomize_pair(power_law_pair(g, 0.4, 0.1, true), CoefficientDistribution{}, CounterRng(4));
  const auto traj = remainder_trajectory(x, c);
  const ModeGrid fine(3, 8, 24);
  const double u3 = lebesgue_norm_of_samples(to_physical(regrid(cube(x.u), fine)), 2.0);
  const double l6 = std::pow(lebesgue_norm(x.u, 6.0, 3), 3);
  CHECK(traj.front().g == Approx(l6).epsilon(1e-12));
  CHECK(traj.front().limit == Approx(std::sqrt(2.0) * u3 / l6).epsilon(1e-12));
  CHECK(traj.front().limit <= std::sqrt(2.0));
  const auto& p = traj[1];
  CHECK(p.rate / (std::sqrt(p.energy) * p.g) == Approx(traj.front().limit).epsilon(1e-4));
}

TEST_CASE("remainder: small run passes its verdicts", "[experiments][remainder]") {
  RemainderConfig c;
  c.modes = 8;
  c.samples = 3;
  c.T = 5.0;
  const auto rep = run_remainder_growth(c, 2);
  CHECK(rep.passed());
}

TEST_CASE("gibbs invariance: t = 0 control and small run", "[experiments][gibbs]") {
  GibbsInvarianceConfig c;
  c.modes = 16;
  c.truncation = 8;
  c.samples = 300;
  c.t = 0.0;
  auto rep = run_gibbs_invariance(c, 1);
  for (std::size_t r = 0; r < rep.rows.size(); ++r) {
    CHECK(cell_double(rep.rows, r, 5) == 0.0);
    CHECK(cell_double(rep.rows, r, 7) == 0.0);
  }
  c.t = 0.5;
  rep = run_gibbs_invariance(c, 1);
  CHECK(rep.passed());
  CHECK(rep.extra["acceptance_rate"].get<double>() > 0.0);
  CHECK(rep.extra["acceptance_rate"].get<double>() <= 1.0);
  c.threads = 4;
  CHECK(run_gibbs_invariance(c, 1).rows.str() == rep.rows.str());
}

TEST_CASE("gibbs invariance: a full linear period returns the ensemble", "[experiments][gibbs]") {
  // radial eigenfrequencies are n pi, so t = 2 is a period of every mode
  GibbsInvarianceConfig c;
  c.modes = 32;
  c.truncation = 16;
  c.samples = 50;
  c.measure = "free";
  c.nonlinear = false;
  c.t = 2.0;
  const auto rep = run_gibbs_invariance(c, 8);
  for (std::size_t r = 0; r < rep.rows.size(); ++r)
    CHECK(std::abs(cell_double(rep.rows, r, 5)) <= 1e-12 * (1.0 + std::abs(cell_double(rep.rows, r, 1))));
}

TEST_CASE("gibbs invariance: config checks", "[experiments][gibbs]") {
  GibbsInvarianceConfig c;
  c.alpha = 4.0;
  CHECK_THROWS_AS(c.validate(), error);
  c = GibbsInvarianceConfig{};
  c.truncation = 100;
  CHECK_THROWS_AS(c.validate(), error);
  c = GibbsInvarianceConfig{};
  c.measure = "uniform";
  CHECK_THROWS_AS(c.validate(), error);
}

TEST_CASE("quasi-moments: sigma_N grows like 2 pi log N", "[experiments][quasi]") {
  // ring sums of |k|^{-2} over N < |k| <= 2N tend to 2 pi log 2
  CHECK(sigma_n(2.0, 512) - sigma_n(2.0, 256) == Approx(2 * std::numbers::pi * std::log(2.0)).epsilon(1e-2));
}

TEST_CASE("quasi-moments: threshold at or below zero is rejected at once", "[experiments][quasi]") {
  QuasiMomentsConfig c;
  c.r = 0.0;
  try {
    run_quasi_moments(c, 1);
    FAIL("expected ZeroAcceptance");
  } catch (const error& e) {
    CHECK(e.code() == errc::zero_acceptance);
  }
  c.s = 1.0;
  CHECK_THROWS_AS(c.validate(), error);
}

TEST_CASE("quasi-moments: small run", "[experiments][quasi]") {
  QuasiMomentsConfig c;
  c.modes = 32;
  c.n_list = {4, 8};
  c.samples = 300;
  c.pilot_samples = 100;
  c.fd_n = 4;
  const auto rep = run_quasi_moments(c, 5);
  const double r = rep.extra["r"];
  CHECK(r > 0.0);
  for (const auto& [n, rate] : rep.extra["acceptance"].items()) CHECK(rate.get<double>() >= 0.3);
  for (const auto& v : rep.verdicts)
    if (v.name.find("finite differences") != std::string::npos || v.name.find("sigma") != std::string::npos) CHECK(v.pass);
}

TEST_CASE("mollifiers", "[experiments][regularized]") {
  const Mollifier sharp{Mollifier::Kind::sharp, 4.0}, fejer{Mollifier::Kind::fejer, 4.0}, id{Mollifier::Kind::identity, 0.0};
  CHECK(sharp(16.0) == 1.0);
  CHECK(sharp(17.0) == 0.0);
  CHECK(fejer(0.0) == 1.0);
  CHECK(fejer(4.0) == Approx(0.5));
  CHECK(fejer(16.0) == 0.0);
  CHECK(id(1e6) == 1.0);
  CHECK_THROWS_AS(Mollifier::parse("gauss"), error);
}

TEST_CASE("regularized convergence: small run", "[experiments][regularized]") {
  RegularizedConfig c;
  c.dim = 2;
  c.modes = 16;
  c.n_list = {2, 4, 8};
  c.T = 0.5;
  c.dt = 0.02;
  const auto rep = run_regularized_convergence(c, 3);
  CHECK(rep.passed());
  CHECK(cell_double(rep.rows, 0, 2) == 0.0);
  for (std::size_t r = 0; r < rep.rows.size(); ++r) CHECK(cell_double(rep.rows, r, 5) <= 1e-14);
}

TEST_CASE("simulate and picard runners", "[experiments][simulate]") {
  SimulateConfig s;
  s.data.data = "zero";
  s.data.modes = 8;
  s.T = 0.1;
  s.dt = 0.01;
  s.snapshot_every = 1;
  const auto rep = run_simulate(s, 0);
  CHECK(rep.passed());
  for (std::size_t r = 0; r < rep.rows.size(); ++r) CHECK(cell_double(rep.rows, r, 1) == 0.0);
  CHECK(rep.files.size() == rep.rows.size());
  CHECK(parse_snapshot(rep.files.back().second) == StatePair::zero(ModeGrid::dealiased(2, 8)));

  PicardConfig p;
  p.data.modes = 8;
  const auto pr = run_picard(p, 0);
  CHECK(pr.passed());
  CHECK(pr.extra["window"].get<double>() > 0.0);
}

TEST_CASE("report helpers", "[experiments][report]") {
  CHECK(strictly_decreasing({3, 2, 1}));
  CHECK_FALSE(strictly_decreasing({3, 3, 1}));
  CHECK(strictly_increasing({1, 2, 5}));
  CHECK(fitted_slope({1, 2, 3}, {2, 4, 6}) == Approx(2.0));
  ExperimentReport rep;
  rep.name = "x";
  rep.add_verdict("C1", "ok", true, 1, 2);
  CHECK(rep.passed());
  rep.add_verdict("C1", "bad", false, 3, 2);
  CHECK_FALSE(rep.passed());
  const auto j = rep.to_json();
  CHECK(j["version"] == library_version);
  CHECK(j["verdicts"].size() == 2);
  CHECK(j["passed"] == false);
}
