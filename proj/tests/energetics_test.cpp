#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wavelab/energetics.hpp"

using namespace wavelab;
using testing::kPi;

namespace {

const auto grid = Grid<double>::radial(40.0, 4000);

Wavefunction<double> hydrogen_1s() {
  return Wavefunction<double>::sample(grid, [](double r) { return std::exp(-r) / std::sqrt(kPi); },
                                      Normalization::unit_l2);
}

}  // namespace

TEST_CASE("1s fields at r = 1") {
  const auto d = energy_densities(hydrogen_1s(), Potential<double>::coulomb());
  const Index i = 99;
  REQUIRE(grid[i] == doctest::Approx(1.0));
  const double e2 = std::exp(-2.0);
  CHECK(d.psi2[i] == doctest::Approx(e2 / kPi).epsilon(1e-12));
  CHECK(d.ke[i] == doctest::Approx(e2 / (2 * kPi)).epsilon(1e-4));
  CHECK(d.c[i] == doctest::Approx(e2 / (2 * kPi)).epsilon(1e-4));
  CHECK(d.pe[i] == doctest::Approx(-e2 / kPi).epsilon(1e-12));
  CHECK(d.e_field[i] == doctest::Approx(-e2 / (2 * kPi)).epsilon(1e-4));
}

TEST_CASE("1s totals") {
  const auto d = energy_densities(hydrogen_1s(), Potential<double>::coulomb());
  CHECK(d.totals.kinetic == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(d.totals.potential == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(d.totals.energy == doctest::Approx(-0.5).epsilon(1e-4));
  CHECK(std::abs(d.totals.kinetic - d.totals.balancing) < 1e-12);
  CHECK(d.surface_term_vanishes);
  CHECK(d.c_imag.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("origin values are extrapolated; a singular potential is infinite there") {
  const auto d = energy_densities(hydrogen_1s(), Potential<double>::coulomb());
  REQUIRE(d.origin.has_value());
  CHECK(d.origin->psi2 == doctest::Approx(1 / kPi).epsilon(1e-5));
  CHECK(d.origin->kinetic == doctest::Approx(1 / (2 * kPi)).epsilon(1e-3));
  CHECK(std::isinf(d.origin->potential));
  CHECK(d.origin->potential < 0);
  CHECK(d.origin->balancing > 0);

  const auto h = energy_densities(hydrogen_1s(), Potential<double>::harmonic(1.0));
  CHECK(h.origin->potential == doctest::Approx(0.0));
  const auto line = energy_densities(Wavefunction<double>::sample(Grid<double>::uniform(-5.0, 5.0, 101),
                                                                  [](double x) { return std::exp(-x * x); }),
                                     VecX<double>(VecX<double>::Zero(101)));
  CHECK_FALSE(line.origin.has_value());
}

TEST_CASE("balancing density changes sign once, at r = 2") {
  const auto d = energy_densities(hydrogen_1s(), Potential<double>::coulomb());
  const auto x = crossing_radius(d);
  REQUIRE(x.unique());
  CHECK(x.candidates[0] == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("a free plane wave has positive balancing density and no crossing") {
  const auto g = Grid<double>::uniform(0.0, 20.0, 4001);
  const double k = 1.5;
  const auto wave = Wavefunction<double>::sample(g, [&](double x) { return std::polar(1.0, k * x); });
  const auto d = energy_densities(wave, VecX<double>(VecX<double>::Zero(g.size())));
  CHECK(crossing_radius(d).candidates.empty());
  CHECK(d.c.minCoeff() > 0);
  for (Index i = 1; i + 1 < g.size(); ++i) CHECK(d.c[i] == doctest::Approx(k * k / 2).epsilon(1e-5));
  CHECK(d.c_imag.cwiseAbs().maxCoeff() < 1e-4);
  CHECK_FALSE(d.surface_term_vanishes);
}

TEST_CASE("virial checks") {
  const auto d = energy_densities(hydrogen_1s(), Potential<double>::coulomb());
  const auto v = virial_report(d, -1);
  CHECK(v.pass());
  CHECK(v.global.deviation < 1e-4);
  CHECK(v.local_virial.deviation < 1e-4);

  const auto g = Grid<double>::uniform(-10.0, 10.0, 2001);
  const auto gs = Wavefunction<double>::sample(g, [](double x) { return std::exp(-x * x / 2); }).normalized();
  const auto h = energy_densities(gs, Potential<double>::harmonic(1.0));
  CHECK(virial_report(h, 2, 0.5).global_pass());
  CHECK(h.totals.energy == doctest::Approx(0.5).epsilon(1e-4));

  // a trial state off the eigenstate fails the global check
  const auto trial = Wavefunction<double>::sample(grid, [](double r) { return std::exp(-1.3 * r); }).normalized();
  CHECK_FALSE(virial_report(energy_densities(trial, Potential<double>::coulomb()), -1).global_pass());
}

TEST_CASE("residual of the exact 1s is the stencil truncation error") {
  const auto psi = hydrogen_1s();
  const auto good = residual(psi, Potential<double>::coulomb(), -0.5);
  // (1/2)(h^2/12) u^(4)/r with u = r e^{-r}/sqrt(pi)
  const double h = grid.spacing();
  for (Index i = 0; i + 1 < grid.size(); ++i) {
    const double r = grid[i];
    const double bound = h * h / 24 * std::abs(r - 4) * std::exp(-r) / (r * std::sqrt(kPi));
    CHECK(std::abs(good.values[i]) <= 1.05 * bound + 1e-9);
  }
  CHECK(good.sup_location == doctest::Approx(h));

  // shifting E by dE adds exactly dE psi
  const auto bad = residual(psi, Potential<double>::coulomb(), -0.49);
  CHECK((bad.values - good.values - 0.01 * psi.values()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK_THROWS_AS(residual(psi, VecX<double>(VecX<double>::Zero(10)), -0.5), PreconditionError);
}

TEST_CASE("property: pointwise identities for random states") {
  testing::for_all(20, 8, [](testing::Gen& g, int) {
    const double a = g.uniform(0.3, 3), b = g.uniform(0.05, 1), c = g.uniform(-2, 2);
    const auto psi = Wavefunction<double>::sample(grid, [&](double r) {
      return std::exp(-a * r) + c * r * std::exp(-b * r * r);
    }).normalized();
    const auto pot = g.coin() ? Potential<double>::coulomb(g.uniform(0.5, 2))
                              : Potential<double>::yukawa(g.uniform(0.5, 2), g.uniform(0, 2));
    const auto d = energy_densities(psi, pot);
    CHECK(d.ke.minCoeff() >= 0);
    CHECK((d.e_field.array() == (d.c + d.pe).array()).all());
    CHECK(std::abs(d.totals.kinetic - d.totals.balancing) <= 1e-10 * d.totals.kinetic);
    CHECK(d.totals.energy == doctest::Approx(d.totals.balancing + d.totals.potential));
  });
}

TEST_CASE("surface term is reported when the state does not vanish at the wall") {
  const auto psi = Wavefunction<double>::sample(grid, [](double r) { return std::exp(-0.2 * r); }).normalized();
  const auto d = energy_densities(psi, Potential<double>::coulomb());
  CHECK_FALSE(d.surface_term_vanishes);
  CHECK(d.boundary_amplitude > 1e-4);
  CHECK(d.surface_term_mismatch() > 0);
}

TEST_CASE("1s pointwise identities on [0.1, 10]") {
  const auto d = energy_densities(hydrogen_1s(), Potential<double>::coulomb());
  const double eps = 2 * grid.spacing();
  double max_gap = 0;
  for (Index i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    max_gap = std::max(max_gap, std::abs(d.ke[i] - d.c[i]));
    if (r < 0.1 || r > 10) continue;
    const double rho = d.psi2[i];
    CHECK(d.ke[i] == doctest::Approx(0.5 * rho).epsilon(1e-4));
    // c - exact = -psi times the residual, so the same truncation bound applies
    const double h = grid.spacing();
    const double bound = h * h / 24 * std::abs(r - 4) * std::exp(-r) / (r * std::sqrt(kPi));
    CHECK(std::abs(d.c[i] - (1 / r - 0.5) * rho) <= std::sqrt(rho) * (1.05 * bound + 1e-9));
    CHECK(d.e_field[i] == doctest::Approx(-0.5 * rho).epsilon(1e-4));
    if (r < 2 - eps) CHECK(d.c[i] > 0);
    if (r > 2 + eps) CHECK(d.c[i] < 0);
  }
  CHECK(max_gap > 0.01);
}

TEST_CASE("2s crossings agree with a sign scan on a ten times finer grid") {
  auto crossings = [](Index n) {
    const auto g = Grid<double>::radial(60.0, n);
    const auto psi = Wavefunction<double>::sample(g, [](double r) { return (2 - r) * std::exp(-r / 2); }).normalized();
    return crossing_radius(energy_densities(psi, Potential<double>::coulomb())).candidates;
  };
  const auto coarse = crossings(6000), fine = crossings(60000);
  REQUIRE(fine.size() == 1);
  REQUIRE(coarse.size() == fine.size());
  // c = (E + 1/r) psi^2 with E = -1/8 changes sign at r = 8; the node at r = 2 only touches zero
  CHECK(fine[0] == doctest::Approx(8.0).epsilon(1e-4));
  CHECK(coarse[0] == doctest::Approx(fine[0]).epsilon(1e-3));
}
