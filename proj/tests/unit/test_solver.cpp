#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "nlw/core/rng.hpp"
#include "nlw/diagnostics/energy.hpp"
#include "nlw/solver.hpp"
#include "nlw/spectral.hpp"

using namespace nlw;
using Catch::Approx;

namespace {

SpectralField smooth_random(const ModeGrid& g, std::uint64_t seed, double decay, double amp = 1.0) {
  CounterRng rng(seed);
  SpectralField f(g);
  g.for_each_mode([&](std::size_t i, const Wavevector&, double n2) {
    f[i] = amp * std::pow(1.0 + n2, -decay / 2) * cplx(rng.gaussian(2 * i), rng.gaussian(2 * i + 1));
  });
  f.make_hermitian();
  return f;
}

StatePair smooth_pair(const ModeGrid& g, std::uint64_t seed, double amp = 1.0) {
  return {smooth_random(g, seed, 3.0, amp), smooth_random(g, seed + 1000, 2.0, amp)};
}

double max_diff(const StatePair& a, const StatePair& b) { return std::max(a.u.max_abs_diff(b.u), a.v.max_abs_diff(b.v)); }

}  // namespace

TEST_CASE("V profile: initial data and invariant", "[solver][ode]") {
  const auto [v0, dv0] = ode_v(0.0);
  CHECK(v0 == 1.0);
  CHECK(dv0 == 0.0);
  const auto& prof = OdeProfileV::instance();
  double worst = 0.0;
  for (int i = 0; i <= 20000; ++i) worst = std::max(worst, std::abs(prof.invariant_defect(10 * prof.period() * i / 20000.0 - 0.37)));
  CHECK(worst <= 1e-10);
  for (const auto& s : prof.table()) CHECK(std::abs(s.dv * s.dv + 0.5 * std::pow(s.v, 4) - 0.5) <= 1e-12);
}

TEST_CASE("V profile: period against the quadrature oracle", "[solver][ode]") {
  boost::math::quadrature::tanh_sinh<double> ts;
  // 2 sqrt2 int_{-1}^{1} dv / sqrt(1 - v^4) = 4 sqrt2 int_0^1 ..., and v = 1 - w^2
  // removes the endpoint singularity
  const double quarter = ts.integrate(
      [](double w) {
        const double q = 1 - w * w;
        return 2.0 / std::sqrt((2 - w * w) * (1 + q * q));
      },
      0.0, 1.0);
  const double oracle = 4 * std::sqrt(2.0) * quarter;
  CHECK(oracle == Approx(7.41630).margin(1e-5));
  CHECK(OdeProfileV::instance().period() == Approx(oracle).epsilon(1e-12));
  const double p = OdeProfileV::instance().period();
  for (double t : {0.1, 1.7, 3.3}) {
    CHECK(ode_v(t + p).first == Approx(ode_v(t).first).margin(1e-13));
    CHECK(ode_v(t - 3 * p).second == Approx(ode_v(t).second).margin(1e-13));
  }
  CHECK(ode_v(p / 2).first == Approx(-1.0).margin(1e-14));
  CHECK(ode_v(p / 4).first == Approx(0.0).margin(1e-14));
}

TEST_CASE("V profile agrees with a direct Runge-Kutta integration", "[solver][ode]") {
  // classical RK4, small step, as an independent oracle
  double v = 1, dv = 0, t = 0;
  const double h = 1e-4;
  while (t < 5.0 - 1e-12) {
    auto f = [](double a, double b) { return std::array<double, 2>{b, -a * a * a}; };
    const auto k1 = f(v, dv);
    const auto k2 = f(v + h / 2 * k1[0], dv + h / 2 * k1[1]);
    const auto k3 = f(v + h / 2 * k2[0], dv + h / 2 * k2[1]);
    const auto k4 = f(v + h * k3[0], dv + h * k3[1]);
    v += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    dv += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    t += h;
  }
  CHECK(ode_v(t).first == Approx(v).margin(1e-11));
  CHECK(ode_v(t).second == Approx(dv).margin(1e-11));
}

TEST_CASE("evolve_split without the nonlinearity is the free flow", "[solver][split]") {
  const auto g = ModeGrid::dealiased(3, 8);
  SolveConfig cfg;
  cfg.dt = 0.01;
  cfg.nonlinear = false;
  const StatePair x{SpectralField(g), SpectralField::constant(g, 0.7)};
  CHECK(max_diff(evolve_split(x, 1.0, cfg), free_evolve(x, 1.0)) < 1e-13);
  const auto y = smooth_pair(g, 3);
  CHECK(max_diff(evolve_split(y, 1.0, cfg), free_evolve(y, 1.0)) < 1e-12);
}

TEST_CASE("evolve_split: constant data follow c V(ct)", "[solver][split]") {
  const auto g = ModeGrid::dealiased(3, 4);
  const double c = 1.3, T = 2.0;
  auto err = [&](double dt) {
    SolveConfig cfg;
    cfg.dt = dt;
    double worst = 0;
    evolve_split({SpectralField::constant(g, c), SpectralField(g)}, T, cfg, [&](double t, const StatePair& x) {
      worst = std::max(worst, std::abs(x.u.mean() - c * ode_v(c * t).first));
    });
    return worst;
  };
  const double e1 = err(0.01), e2 = err(0.005);
  CHECK(e1 < 1e-3);
  CHECK(e1 / e2 == Approx(4.0).epsilon(0.1));
}

TEST_CASE("evolve_split: energy drift is second order, scheme is reversible", "[solver][split]") {
  const auto g = ModeGrid::dealiased(2, 16);
  const auto x = smooth_pair(g, 41, 2.0);
  const double h0 = energy(x);
  auto drift = [&](double dt) {
    SolveConfig cfg;
    cfg.dt = dt;
    double worst = 0;
    evolve_split(x, 1.0, cfg, [&](double, const StatePair& y) { worst = std::max(worst, std::abs(energy(y) - h0) / h0); });
    return worst;
  };
  const double d1 = drift(0.01), d2 = drift(0.005);
  CHECK(d1 < 1e-3);
  CHECK(d1 / d2 == Approx(4.0).epsilon(0.2));

  SolveConfig cfg;
  cfg.dt = 0.01;
  const auto y = evolve_split(evolve_split(x, 1.0, cfg), -1.0, cfg);
  CHECK(max_diff(y, x) <= 1e-8);
}

TEST_CASE("truncated flow", "[solver][truncated]") {
  const auto g = ModeGrid::dealiased(2, 16);
  SolveConfig cfg;
  cfg.dt = 0.01;
  SECTION("data above the cutoff evolve exactly linearly") {
    const auto x = smooth_pair(g, 5);
    const StatePair hi{project_gt(3, x.u), project_gt(3, x.v)};
    CHECK(truncated_flow(hi, 3, 0.8, cfg) == free_evolve(hi, 0.8));
  }
  SECTION("a ball covering the grid gives evolve_split") {
    const auto x = smooth_pair(g, 6);
    CHECK(truncated_flow(x, 100, 0.5, cfg) == evolve_split(x, 0.5, cfg));
  }
  SECTION("high modes are bit-identical to the free flow, low modes commute with pi_N") {
    const auto x = smooth_pair(g, 7, 2.0);
    const double n = 4;
    const auto y = truncated_flow(x, n, 0.6, cfg);
    const auto lin = free_evolve(x, 0.6);
    CHECK(project_gt(n, y.u) == project_gt(n, lin.u));
    CHECK(project_gt(n, y.v) == project_gt(n, lin.v));
    const auto z = truncated_flow(project_leq(n, x), n, 0.6, cfg);
    CHECK(project_leq(n, y.u).max_abs_diff(z.u) == 0.0);
    CHECK(project_leq(n, y.v).max_abs_diff(z.v) == 0.0);
  }
  SECTION("truncated cube matches a full-grid evaluation") {
    const auto u = smooth_random(g, 8, 2.0);
    const double n = 3.5;
    const auto direct = project_leq(n, cube(project_leq(n, u)));
    CHECK(truncated_cube(u, n).max_abs_diff(direct) < 1e-13);
  }
  SECTION("H_N drift is second order") {
    const auto x = smooth_pair(g, 9, 2.0);
    const double n = 5;
    const double h0 = truncated_energy(x, n);
    auto drift = [&](double dt) {
      SolveConfig c;
      c.dt = dt;
      double worst = 0;
      truncated_flow(x, n, 1.0, c, [&](double, const StatePair& y) { worst = std::max(worst, std::abs(truncated_energy(y, n) - h0)); });
      return worst / h0;
    };
    const double d1 = drift(0.02), d2 = drift(0.01);
    CHECK(d1 / d2 == Approx(4.0).epsilon(0.2));
  }
}

TEST_CASE("local solve", "[solver][local]") {
  const auto g = ModeGrid::dealiased(3, 8);
  SolveConfig cfg;
  SECTION("zero data") {
    const auto sol = local_solve(StatePair::zero(g), std::nullopt, 0.1, cfg);
    for (const auto& x : sol.trajectory.states) CHECK(sobolev_norm(x.u, 1) == 0.0);
  }
  SECTION("constant data follow c V(ct)") {
    const double c = 1.2;
    const auto sol = local_solve({SpectralField::constant(g, c), SpectralField(g)}, std::nullopt, 0.3, cfg);
    for (std::size_t k = 0; k < sol.trajectory.size(); ++k) {
      const double t = sol.trajectory.times[k];
      CHECK(sol.trajectory.states[k].u.mean() == Approx(c * ode_v(c * t).first).margin(1e-10));
    }
    CHECK(sol.contraction < 0.5);
  }
  SECTION("agrees with the splitting solver on the contraction window") {
    const auto x = smooth_pair(g, 12);
    const auto sol = local_solve_adaptive(x, std::nullopt, cfg);
    CHECK(sol.contraction <= 0.5);
    SolveConfig sc;
    sc.dt = sol.grid.t1 / 400;
    double worst = 0;
    for (int j = 0; j <= sol.grid.steps; ++j) {
      const double t = sol.grid.panel_start(j);
      const auto y = evolve_split(x, t == 0 ? 0.0 : t, sc);
      worst = std::max(worst, sobolev_norm(y.u - sol.trajectory.states[sol.grid.endpoint_node(j)].u, 1));
    }
    CHECK(worst <= 1e-6);
  }
  SECTION("a long window does not contract") {
    const auto x = smooth_pair(g, 13, 6.0);
    CHECK_THROWS_AS(local_solve(x, std::nullopt, 2.0, cfg), error);
  }
  SECTION("forcing enters as (f + v)^3") {
    // with v0 = v1 = 0 and constant f = c, v'' = -(c + v)^3, so c + v = c V(ct)
    const double c = 0.9;
    const auto f = SpectralField::constant(g, c);
    const auto sol = local_solve(StatePair::zero(g), Source([&](double) { return f; }), 0.4, cfg);
    for (std::size_t k = 0; k < sol.trajectory.size(); ++k) {
      const double t = sol.trajectory.times[k];
      CHECK(c + sol.trajectory.states[k].u.mean() == Approx(c * ode_v(c * t).first).margin(1e-10));
    }
  }
}

TEST_CASE("radial solver", "[solver][radial]") {
  const double pi = std::numbers::pi;
  SolveConfig cfg;
  cfg.dt = 0.01;
  SECTION("DST synthesis and projection are inverse on the mode range") {
    RadialState x(16);
    CounterRng rng(3);
    for (int n = 0; n < 16; ++n) x.a[n] = rng.gaussian(n);
    const auto w = radial_samples(x.a, x.points);
    for (int j = 1; j < x.points; j += 5) {
      double s = 0;
      for (int n = 1; n <= 16; ++n) s += x.a[n - 1] * std::sin(n * pi * j / x.points);
      CHECK(w[j - 1] == Approx(s).margin(1e-13));
    }
    const auto back = radial_project(w, 16);
    for (int n = 0; n < 16; ++n) CHECK(back[n] == Approx(x.a[n]).margin(1e-13));
  }
  SECTION("eigenmode with the nonlinearity off") {
    RadialState x(8);
    x.a[0] = 1.0;
    cfg.nonlinear = false;
    for (double t : {0.25, 1.0, 1.7}) {
      const auto y = radial_evolve(x, 2.0, 8, t, cfg);
      CHECK(y.a[0] == Approx(std::cos(pi * t)).margin(1e-13));
      CHECK(y.b[0] == Approx(-pi * std::sin(pi * t)).margin(1e-12));
    }
  }
  SECTION("zero data stay zero") {
    const RadialState x(8);
    CHECK(radial_evolve(x, 2.0, 8, 1.0, cfg) == x);
  }
  SECTION("Hamiltonian drift is second order, alpha = 2, M = 64") {
    RadialState x(64);
    CounterRng rng(17);
    for (int n = 1; n <= 64; ++n) {
      x.a[n - 1] = 2.0 * rng.gaussian(2 * n) / (n * pi) / n;
      x.b[n - 1] = 2.0 * rng.gaussian(2 * n + 1) / n;
    }
    const double h0 = radial_energy(x, 2.0, 64);
    auto drift = [&](double dt) {
      SolveConfig c;
      c.dt = dt;
      double worst = 0;
      radial_evolve(x, 2.0, 64, 1.0, c, [&](double, const RadialState& y) { worst = std::max(worst, std::abs(radial_energy(y, 2.0, 64) - h0)); });
      return worst / h0;
    };
    const double d1 = drift(0.002), d2 = drift(0.001);
    CHECK(d1 < 1e-3);
    CHECK(d1 / d2 == Approx(4.0).epsilon(0.2));
  }
  SECTION("values near the origin stay bounded by the coefficient sum") {
    RadialState x(32);
    CounterRng rng(5);
    for (int n = 1; n <= 32; ++n) x.a[n - 1] = rng.gaussian(n) / (n * pi);
    double bound = 0;
    for (int n = 1; n <= 32; ++n) bound += std::abs(x.a[n - 1]) * n * pi;
    for (double r : {0.0, 1e-9, 1.0 / x.points, 0.01}) CHECK(std::abs(radial_value(x, r)) <= 2 * bound);
    CHECK(radial_value(x, 1e-9) == Approx(radial_value(x, 0.0)).margin(1e-6));
    CHECK_THROWS_AS(radial_value(x, -0.1), error);
  }
  SECTION("alpha range") {
    CHECK_THROWS_AS(radial_evolve(RadialState(4), 3.5, 4, 1.0, cfg), error);
  }
}
