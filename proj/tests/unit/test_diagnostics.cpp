#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "nlw/core/rng.hpp"
#include "nlw/diagnostics.hpp"
#include "nlw/randomize.hpp"
#include "nlw/solver.hpp"
#include "nlw/spectral.hpp"

using namespace nlw;
using Catch::Approx;

namespace {

SpectralField smooth_random(const ModeGrid& g, std::uint64_t seed, double decay, double amp = 1.0) {
  CounterRng rng(seed);
  SpectralField f(g);
  g.for_each_mode([&](std::size_t i, const Wavevector& k, double n2) {
    const auto c = mode_counter(k, 0, 0);
    f[i] = amp * std::pow(1.0 + n2, -decay / 2) * cplx(rng.gaussian(c), rng.gaussian(c + 1));
  });
  f.make_hermitian();
  return f;
}

StatePair cos_x1(const ModeGrid& g) { return {SpectralField::trig_mode(g, {1, 0, 0}, 1.0), SpectralField(g)}; }

// Direct physical-space oracle for H: gradients and products sampled on a
// grid with 4x padding, plain means.
double energy_oracle(const StatePair& x) {
  const ModeGrid& g = x.grid();
  const ModeGrid fine(g.dim, g.modes, 4 * g.modes);
  const auto u = to_physical(regrid(x.u, fine));
  const auto v = to_physical(regrid(x.v, fine));
  std::vector<std::vector<double>> du;
  for (int a = 0; a < g.dim; ++a) du.push_back(to_physical(regrid(partial(x.u, a), fine)));
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    double grad = 0.0;
    for (const auto& d : du) grad += d[j] * d[j];
    acc += 0.5 * (v[j] * v[j] + grad) + 0.25 * std::pow(u[j], 4);
  }
  return acc / static_cast<double>(u.size());
}

}  // namespace

TEST_CASE("energy: closed-form values", "[diagnostics][energy]") {
  const ModeGrid g = ModeGrid::dealiased(3, 8);
  CHECK(energy(StatePair::zero(g)) == 0.0);
  CHECK(energy(cos_x1(g)) == Approx(11.0 / 32).epsilon(1e-14));
}

TEST_CASE("energy: agrees with a physical-space quadrature oracle", "[diagnostics][energy]") {
  for (int d : {1, 2, 3}) {
    const ModeGrid g = ModeGrid::dealiased(d, d == 3 ? 8 : 16);
    const StatePair x{smooth_random(g, 11 + d, 2.0), smooth_random(g, 31 + d, 1.0)};
    CHECK(energy(x) == Approx(energy_oracle(x)).epsilon(1e-10));
  }
}

TEST_CASE("semiclassical energy: zero, homogeneity and a single mode", "[diagnostics][energy]") {
  const ModeGrid g = ModeGrid::dealiased(3, 16);
  CHECK(semiclassical_energy(StatePair::zero(g), 4, 0.5) == 0.0);

  const StatePair x{smooth_random(g, 5, 2.0), smooth_random(g, 6, 1.0)};
  StatePair y = x;
  y.u *= 3.0;
  y.v *= 3.0;
  CHECK(semiclassical_energy(y, 5, 0.7) == Approx(3.0 * semiclassical_energy(x, 5, 0.7)).epsilon(1e-13));

  // u = cos(k.x), v = 0 with |k|^2 = m: the two terms are
  // n^{s-1} (m/2)^{1/2} and n^{s-2} ((1+m) m / 2)^{1/2}
  const StatePair w{SpectralField::trig_mode(g, {2, 1, 0}, 1.0), SpectralField(g)};
  const double m = 5.0, n = 8.0, s = 0.3;
  const double oracle = std::pow(n, s - 1) * std::sqrt(m / 2) + std::pow(n, s - 2) * std::sqrt((1 + m) * m / 2);
  CHECK(semiclassical_energy(w, 8, s) == Approx(oracle).epsilon(1e-14));
  CHECK_THROWS_AS(semiclassical_energy(w, 0, s), nlw::error);
}

TEST_CASE("modified energy: closed-form values and errors", "[diagnostics][modified]") {
  const ModeGrid g = ModeGrid::dealiased(2, 16);
  CHECK(modified_energy(StatePair::zero(g), 2.0, 4) == Approx(0.0).margin(1e-14));
  CHECK(modified_energy(cos_x1(g), 2.0, 1) == Approx(13.0 / 32).epsilon(1e-13));

  // term-by-term oracle for cos(x1): 1/4 + (3/2)(3/8) - (3/2) sigma_1 (1/2) + 11/32 + 1/4
  const double terms = 0.25 + 1.5 * 0.375 - 1.5 * sigma_n(2.0, 1) * 0.5 + 11.0 / 32 + 0.25;
  CHECK(terms == Approx(13.0 / 32).epsilon(1e-14));

  CHECK_THROWS_AS(modified_energy(cos_x1(g), 3.0, 4), nlw::error);
  CHECK_THROWS_AS(dt_modified_energy(cos_x1(g), 1.0, 4), nlw::error);
  try {
    modified_energy(cos_x1(g), 4.0, 4);
  } catch (const nlw::error& e) {
    CHECK(e.code() == errc::unsupported_s);
  }
  const ModeGrid g3 = ModeGrid::dealiased(3, 8);
  CHECK_THROWS_AS(modified_energy(cos_x1(g3), 2.0, 2), nlw::error);
}

TEST_CASE("modified energy: translation invariance", "[diagnostics][modified]") {
  const ModeGrid g = ModeGrid::dealiased(2, 16);
  const StatePair x{smooth_random(g, 21, 3.0), smooth_random(g, 22, 2.0)};
  // shift by (a, b): coefficient k picks up exp(i k.(a,b))
  StatePair y = x;
  const double a = 0.7, b = -1.3;
  g.for_each_mode([&](std::size_t i, const Wavevector& k, double) {
    const cplx ph = std::polar(1.0, k[0] * a + k[1] * b);
    y.u[i] *= ph;
    y.v[i] *= ph;
  });
  CHECK(modified_energy(y, 2.0, 5) == Approx(modified_energy(x, 2.0, 5)).epsilon(1e-12));
}

TEST_CASE("modified energy rate: vanishing cases", "[diagnostics][modified]") {
  const ModeGrid g = ModeGrid::dealiased(2, 16);
  const auto zero = dt_modified_energy(StatePair::zero(g), 2.0, 4);
  CHECK(zero.total == 0.0);
  CHECK(zero.q1 == 0.0);
  CHECK(zero.q2 == 0.0);
  CHECK(zero.q3 == 0.0);
  CHECK(zero.uv == 0.0);

  const StatePair still{smooth_random(g, 3, 3.0), SpectralField(g)};
  const auto r = dt_modified_energy(still, 2.0, 5);
  CHECK(r.total == Approx(0.0).margin(1e-13));
  CHECK(r.q1 == Approx(0.0).margin(1e-13));
  CHECK(r.q2 == Approx(0.0).margin(1e-13));
  CHECK(r.q3 == Approx(0.0).margin(1e-13));
}

TEST_CASE("modified energy rate: central differences along the truncated flow", "[diagnostics][modified]") {
  const ModeGrid g = ModeGrid::dealiased(2, 16);
  const StatePair x{smooth_random(g, 41, 3.0, 0.8), smooth_random(g, 42, 2.0, 0.8)};
  const int n = 5;
  const double rate = dt_modified_energy(x, 2.0, n).total;
  REQUIRE(std::abs(rate) > 1e-3);

  std::vector<double> err;
  for (double h : {0.04, 0.02, 0.01}) {
    SolveConfig cfg;
    cfg.dt = h / 8;
    const double plus = modified_energy(truncated_flow(x, n, h, cfg), 2.0, n);
    const double minus = modified_energy(truncated_flow(x, n, -h, cfg), 2.0, n);
    err.push_back(std::abs((plus - minus) / (2 * h) - rate));
  }
  CHECK(err.back() < 1e-3 * std::abs(rate));
  CHECK(std::log2(err[0] / err[1]) >= 1.9);
  CHECK(std::log2(err[1] / err[2]) >= 1.9);
}

TEST_CASE("wick quadratic: centering and moment growth", "[diagnostics][wick]") {
  const ModeGrid g = ModeGrid::dealiased(2, 32);
  CHECK(wick_quadratic(SpectralField(g), 2.0, 8) == Approx(-sigma_n(2.0, 8)).epsilon(1e-15));

  const SeedSpec seed{2024, "wick"};
  auto ensemble = [&](int n, int count) {
    std::vector<double> w(count);
    for (int i = 0; i < count; ++i) w[i] = wick_quadratic(sample_mu_tilde(2.0, g, seed.sample(i)).u, 2.0, n);
    return w;
  };
  const auto w8 = ensemble(8, 10000);
  const auto est = mean_and_se(w8);
  CHECK(std::abs(est.mean) <= 3 * est.se);

  const std::vector<double> ps{2, 4, 8, 16};
  const auto fit = moment_slope(w8, ps);
  const double base = fit.points[0].norm / 2;
  for (const auto& pt : fit.points) CHECK(pt.norm / pt.p <= 2 * base);

  const auto w4 = ensemble(4, 4000), w16 = ensemble(15, 4000);
  const double l2_4 = moment_slope(w4, ps).points[0].norm, l2_16 = moment_slope(w16, ps).points[0].norm;
  CHECK(l2_16 / l2_4 <= 1.5);
}

TEST_CASE("Strichartz ratio: closed forms and admissibility", "[diagnostics][strichartz]") {
  const ModeGrid g = ModeGrid::dealiased(3, 8);
  const StatePair one{SpectralField::constant(g, 1.0), SpectralField(g)};
  CHECK(strichartz_ratio(one, 4, 4) == Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(strichartz_ratio(one, 4, 3), nlw::error);
  CHECK_THROWS_AS(strichartz_ratio(one, 2, HUGE_VAL), nlw::error);
  CHECK_NOTHROW(strichartz_ratio(one, HUGE_VAL, 2));
  try {
    strichartz_ratio(one, 6, 6);
  } catch (const nlw::error& e) {
    CHECK(e.code() == errc::inadmissible_pair);
  }

  const ModeGrid big = ModeGrid::dealiased(3, 32);
  double prev = HUGE_VAL;
  for (int k : {1, 2, 4, 8}) {
    const StatePair w{SpectralField::trig_mode(big, {k, 0, 0}, 1.0), SpectralField(big)};
    const double r = strichartz_ratio(w, 4, 4);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("Strichartz ratio: ensemble maximum is grid-stable", "[diagnostics][strichartz]") {
  double worst[2] = {0, 0};
  int slot = 0;
  for (int m : {8, 16}) {
    const ModeGrid g = ModeGrid::dealiased(3, m);
    for (int i = 0; i < 12; ++i) {
      const StatePair x{smooth_random(g, 100 + i, 2.5), smooth_random(g, 200 + i, 1.5)};
      worst[slot] = std::max(worst[slot], strichartz_ratio(x, 4, 4));
    }
    ++slot;
  }
  CHECK(worst[1] <= 1.1 * worst[0]);
  CHECK(worst[0] > 0.0);
}

TEST_CASE("tail and moment estimators", "[diagnostics][statistics]") {
  const std::vector<double> c(500, -2.5);
  const std::vector<double> ps{2, 4, 8};
  const auto flat = moment_slope(c, ps);
  for (const auto& pt : flat.points) CHECK(pt.norm == Approx(2.5).epsilon(1e-14));
  CHECK(flat.slope == Approx(0.0).margin(1e-12));

  // Bernoulli sum with c = (1/sqrt2, 1/sqrt2): all four outcomes
  std::vector<double> outcomes;
  for (int a : {-1, 1})
    for (int b : {-1, 1}) outcomes.push_back((a + b) / std::sqrt(2.0));
  const std::vector<double> lam{1.0};
  CHECK(tail_estimate(outcomes, lam)[0].survival == 0.5);
}

TEST_CASE("moment slope of Gaussian samples", "[diagnostics][statistics]") {
  // exact: ||X||_p = (2^{p/2} Gamma((p+1)/2) / sqrt(pi))^{1/p}
  auto exact_slope = [](const std::vector<double>& ps) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double p : ps) {
      const double ly = (0.5 * p * std::log(2.0) + std::lgamma(0.5 * (p + 1)) - 0.5 * std::log(std::numbers::pi)) / p;
      sx += std::log(p);
      sy += ly;
      sxx += std::log(p) * std::log(p);
      sxy += std::log(p) * ly;
    }
    const double k = ps.size();
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
  };
  const std::vector<double> ps{2, 3, 4, 6, 8};
  SequentialRng rng(CounterRng(77));
  std::vector<double> x(100000);
  for (double& y : x) y = rng.gaussian();
  const auto fit = moment_slope(x, ps);
  CHECK(std::abs(fit.slope - exact_slope(ps)) <= 3 * fit.slope_se + 0.01);
  // the exact slope approaches 1/2 on dyadic windows moving to large p
  CHECK(std::abs(exact_slope({16, 32, 64}) - 0.5) <= 0.05);
  CHECK(exact_slope({64, 128, 256}) > exact_slope({16, 32, 64}));
}

TEST_CASE("Gronwall envelope", "[diagnostics][statistics]") {
  std::vector<double> t, zero, one;
  for (int j = 0; j <= 100; ++j) {
    t.push_back(0.05 * j);
    zero.push_back(0.0);
    one.push_back(1.0);
  }
  for (double e : gronwall_envelope(zero, zero, t, 3.0)) CHECK(e == 0.0);
  const auto env = gronwall_envelope(zero, one, t, 1.0);
  for (std::size_t j = 0; j < t.size(); ++j) CHECK(env[j] == Approx(t[j]).margin(1e-13));
  std::vector<double> neg = one;
  neg[3] = -1.0;
  CHECK_THROWS_AS(gronwall_envelope(zero, neg, t, 1.0), nlw::error);
}

TEST_CASE("CSV writer quoting and number format", "[diagnostics][report]") {
  CsvTable t({"t", "name", "n"});
  t.add_row({0.1, std::string("a,b"), 3LL});
  t.add_row({1e-300, std::string("q\"x"), -1LL});
  CHECK(t.str() == "t,name,n\r\n0.1,\"a,b\",3\r\n1e-300,\"q\"\"x\",-1\r\n");
  CHECK_THROWS_AS(t.add_row({1.0}), nlw::error);
  CHECK(format_number(0.30000000000000004) == "0.30000000000000004");
}
