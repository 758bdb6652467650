#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "nlw/core/rng.hpp"
#include "nlw/spectral.hpp"

using namespace nlw;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

SpectralField random_field(const ModeGrid& g, std::uint64_t seed, double decay = 0.0) {
  CounterRng rng(seed);
  SpectralField f(g);
  g.for_each_mode([&](std::size_t i, const Wavevector&, double n2) {
    const double w = std::pow(1.0 + n2, -decay / 2);
    f[i] = w * cplx(rng.gaussian(2 * i), rng.gaussian(2 * i + 1));
  });
  f.make_hermitian();
  return f;
}

// Direct (quadratic cost) evaluation of f at the physical nodes.
std::vector<double> direct_synthesis(const SpectralField& f) {
  const ModeGrid& g = f.grid();
  std::vector<double> out(g.point_count());
  for (std::size_t j = 0; j < out.size(); ++j) {
    std::array<double, 3> x{0, 0, 0};
    std::size_t r = j;
    for (int a = g.dim - 1; a >= 0; --a) {
      x[a] = 2 * pi * static_cast<double>(r % g.points) / g.points;
      r /= g.points;
    }
    cplx acc = 0;
    g.for_each_mode([&](std::size_t i, const Wavevector& k, double) {
      acc += f[i] * std::exp(cplx(0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]));
    });
    out[j] = acc.real();
  }
  return out;
}

}  // namespace

TEST_CASE("mode grid layout and indexing", "[spectral]") {
  ModeGrid g(2, 8, 12);
  CHECK(g.mode_count() == 64);
  CHECK(g.point_count() == 144);
  CHECK(g.wavenumber(3) == 3);
  CHECK(g.wavenumber(4) == -4);
  CHECK(g.wavenumber(7) == -1);
  for (std::size_t i = 0; i < g.mode_count(); ++i) CHECK(g.index_of(g.wavevector(i)) == (g.is_nyquist(g.wavevector(i)) ? ModeGrid::npos : i));
  CHECK_THROWS_AS(ModeGrid(4, 8, 16), error);
  CHECK_THROWS_AS(ModeGrid(1, 7, 16), error);
  CHECK(ModeGrid::dealiased(3, 16).points == 32);
  CHECK(ModeGrid::dealiased(3, 16, 1.5).can_dealias_cubic());
}

TEST_CASE("zero field has zero samples", "[spectral]") {
  const ModeGrid g(3, 8, 12);
  for (double x : to_physical(SpectralField(g))) CHECK(x == 0.0);
}

TEST_CASE("cos(x1) samples on grid nodes", "[spectral]") {
  const ModeGrid g(2, 8, 16);
  const auto f = SpectralField::trig_mode(g, {1, 0, 0}, 1.0);
  const auto x = to_physical(f);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) CHECK(x[i * 16 + j] == Approx(std::cos(2 * pi * i / 16)).margin(1e-14));
}

TEST_CASE("transform matches a direct DFT at M = 4", "[spectral]") {
  for (int d = 1; d <= 3; ++d) {
    const ModeGrid g(d, 4, 6);
    const auto f = random_field(g, 11 + d);
    const auto fast = to_physical(f);
    const auto slow = direct_synthesis(f);
    for (std::size_t j = 0; j < fast.size(); ++j) CHECK(fast[j] == Approx(slow[j]).margin(1e-12));
    CHECK(to_spectral(g, slow).max_abs_diff(f) < 1e-13);
  }
}

TEST_CASE("round trip at M = 16, d = 3", "[spectral]") {
  const auto g = ModeGrid::dealiased(3, 16);
  const auto f = random_field(g, 5);
  CHECK(f.hermitian_defect() == 0.0);
  const auto back = to_spectral(g, to_physical(f));
  CHECK(back.max_abs_diff(f) <= 1e-12);
}

TEST_CASE("dealiased cube is exact for band-limited data", "[spectral]") {
  const auto g = ModeGrid::dealiased(1, 8);
  const auto f = SpectralField::trig_mode(g, {1, 0, 0}, 1.0);
  // cos^3 = (3 cos x + cos 3x) / 4
  const auto c = cube(f);
  CHECK(c.at({1, 0, 0}).real() == Approx(3.0 / 8));
  CHECK(c.at({3, 0, 0}).real() == Approx(1.0 / 8));
  CHECK(std::abs(c.at({2, 0, 0})) < 1e-15);
}

TEST_CASE("multipliers", "[spectral]") {
  const auto g = ModeGrid::dealiased(3, 8);
  SECTION("sinc at the zero mode returns c t") {
    const auto f = apply_multiplier(SymbolSpec::sinc_wave(0.7), SpectralField::constant(g, 3.0));
    CHECK(f.mean() == Approx(2.1));
  }
  SECTION("bracket power 0 is the identity") {
    const auto f = random_field(g, 9);
    CHECK(apply_multiplier(SymbolSpec::bracket(0.0), f) == f);
  }
  SECTION("cos^2 + n^2 sinc^2 = 1") {
    const double t = 1.37;
    g.for_each_mode([&](std::size_t, const Wavevector&, double n2) {
      if (n2 == 0) return;
      const double c = SymbolSpec::cos_wave(t)(n2), s = SymbolSpec::sinc_wave(t)(n2);
      CHECK(c * c + n2 * s * s == Approx(1.0).epsilon(1e-14));
    });
  }
  SECTION("composition equals product symbol") {
    const auto f = random_field(g, 3);
    const auto a = SymbolSpec::bracket(0.6), b = SymbolSpec::cos_wave(0.9);
    const auto lhs = apply_multiplier(a, apply_multiplier(b, f));
    const auto rhs = apply_multiplier(a.symbol() * b.symbol(), f);
    CHECK(lhs.max_abs_diff(rhs) < 1e-15);
    CHECK(lhs.hermitian_defect() < 1e-15);
  }
  SECTION("projection commutes with radial multipliers") {
    const auto f = random_field(g, 4);
    const auto a = SymbolSpec::modified(2.0, -1);
    CHECK(project_leq(2.5, apply_multiplier(a, f)).max_abs_diff(apply_multiplier(a, project_leq(2.5, f))) == 0.0);
  }
}

TEST_CASE("sobolev norm", "[spectral]") {
  const auto g = ModeGrid::dealiased(3, 8);
  CHECK(sobolev_norm(SpectralField(g), 1.3) == 0.0);
  for (double s : {-1.0, 0.0, 0.5, 2.0}) CHECK(sobolev_norm(SpectralField::constant(g, 1.0), s) == Approx(1.0));
  CHECK(sobolev_norm(SpectralField::trig_mode(g, {1, 0, 0}, 1.0), 1.0) == Approx(1.0));

  const auto f = random_field(g, 21, 1.0);
  double loop = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto k = g.wavevector(i);
    loop += std::pow(1.0 + k[0] * k[0] + k[1] * k[1] + k[2] * k[2], 0.7) * std::norm(f[i]);
  }
  CHECK(sobolev_norm(f, 0.7) == Approx(std::sqrt(loop)).epsilon(1e-13));
  double prev = 0;
  for (double s = -1; s <= 2; s += 0.25) {
    const double v = sobolev_norm(f, s);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("lebesgue norm", "[spectral]") {
  const auto g = ModeGrid::dealiased(2, 8);
  const auto one = SpectralField::constant(g, 1.0);
  for (double p : {1.0, 2.0, 3.5, 4.0, HUGE_VAL}) CHECK(lebesgue_norm(one, p) == Approx(1.0));
  const auto c = SpectralField::trig_mode(g, {1, 0, 0}, 1.0);
  CHECK(lebesgue_norm(c, 2) == Approx(1 / std::sqrt(2.0)));
  CHECK(lebesgue_norm(c, 4) == Approx(std::pow(3.0 / 8, 0.25)));
  CHECK(lebesgue_norm(c, INFINITY) == Approx(1.0));
  CHECK_THROWS_AS(lebesgue_norm(c, 0.5), error);

  // Parseval on random fields, d = 1..3
  for (int d = 1; d <= 3; ++d) {
    const auto f = random_field(ModeGrid::dealiased(d, 8), 30 + d);
    CHECK(lebesgue_norm(f, 2) == Approx(sobolev_norm(f, 0)).epsilon(1e-12));
  }
  // refinement does not change an exact quadrature
  const auto f = random_field(ModeGrid::dealiased(1, 16), 7, 1.0);
  CHECK(lebesgue_norm(f, 4, 2) == Approx(lebesgue_norm(f, 4)).epsilon(1e-12));
}

TEST_CASE("projectors", "[spectral]") {
  const auto g = ModeGrid::dealiased(3, 8);
  CHECK(sobolev_norm(project_leq(2, SpectralField::trig_mode(g, {3, 0, 0}, 1.0)), 0) == 0.0);
  CHECK(sobolev_norm(project_nonzero(SpectralField::constant(g, 1.0)), 0) == 0.0);
  const auto f = random_field(g, 2);
  CHECK(project_leq(2, project_leq(2, f)) == project_leq(2, f));
  CHECK((project_leq(2, f) + project_gt(2, f)).max_abs_diff(f) == 0.0);
}

TEST_CASE("regrid and dilation", "[spectral]") {
  const auto small = ModeGrid::dealiased(2, 8);
  const auto big = ModeGrid::dealiased(2, 32);
  const auto f = random_field(small, 4);
  CHECK(regrid(regrid(f, big), small) == f);
  const auto d = dilate_modes(f, 3, big);
  CHECK(sobolev_norm(d, 0.8) == Approx(dilated_sobolev_norm(f, 3, 0.8)).epsilon(1e-13));
  // g(3x) sampled directly
  const auto xs = to_physical(d);
  const auto xf = to_physical(regrid(f, ModeGrid(2, 8, 64)));
  // node (i, j) of the big grid (P = 64) maps to node (3i mod 64, 3j mod 64) of the same-P small grid
  for (int i = 0; i < 64; i += 7)
    for (int j = 0; j < 64; j += 5) CHECK(xs[i * 64 + j] == Approx(xf[((3 * i) % 64) * 64 + (3 * j) % 64]).margin(1e-12));
}

namespace {

double bump_l2_squared_rd(const BumpSpec& phi, int d) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double radial = ts.integrate([&](double r) { return std::pow(r, d - 1) * std::pow(phi.radial(r), 2); }, 0.0, phi.rho0);
  const double area = d == 1 ? 2.0 : d == 2 ? 2 * pi : 4 * pi;
  return area * radial;
}

}  // namespace

TEST_CASE("bump dilation", "[spectral]") {
  const BumpSpec phi;
  SECTION("n = 1 reproduces the bump on nodes") {
    const ModeGrid g(1, 128, 128);
    const auto x = to_physical(bump_dilate(phi, 1, g));
    for (int j = 0; j < 128; ++j) CHECK(x[j] == Approx(phi.radial(std::abs(centered_coordinate(j, 128)))).margin(1e-6));
  }
  SECTION("L2 scaling under the normalized measure") {
    for (int d = 1; d <= 3; ++d) {
      const double rd = std::sqrt(bump_l2_squared_rd(phi, d));
      for (int n : {1, 2, 4}) {
        const int m = d == 3 ? 16 * n : 32 * n;
        const auto f = bump_dilate(phi, n, ModeGrid(d, m, m));
        const double expected = std::pow(2 * pi, -d / 2.0) * std::pow(n, -d / 2.0) * rd;
        // truncation at |k| < 8n (d = 3) or 16n limits the agreement
        CHECK(sobolev_norm(f, 0) == Approx(expected).epsilon(d == 3 ? 5e-3 : 1e-4));
      }
    }
  }
  SECTION("H^s norm scales like n^(s - d/2)") {
    std::vector<SpectralField> fields;
    for (int n : {2, 4, 8}) fields.push_back(bump_dilate(phi, n, ModeGrid(3, 12 * n, 12 * n)));
    for (double s : {0.0, 0.3, 1.0}) {
      double lo = INFINITY, hi = 0;
      for (int i = 0; i < 3; ++i) {
        const double r = sobolev_norm(fields[i], s) / std::pow(2 << i, s - 1.5);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      CHECK(lo > 0);
      CHECK(hi / lo < 2.0);
    }
  }
  SECTION("support violation") {
    CHECK_THROWS_AS(bump_dilate(BumpSpec{4.0}, 1, ModeGrid(1, 8, 8)), error);
  }
}
