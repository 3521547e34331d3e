#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "wavelab/born.hpp"

using namespace wavelab;
using testing::kPi;

TEST_CASE("propagator weight") {
  CHECK(propagator_weight(0.5) == 4.0);
  CHECK(propagator_weight(2.0) == 0.25);
  CHECK_THROWS_AS(propagator_weight(0.0), DomainError);
}

TEST_CASE("momentum transfer kinematics") {
  CHECK(MomentumTransfer<double>::from_angle(1.0, kPi).q == doctest::Approx(2.0));
  CHECK(MomentumTransfer<double>::from_angle(1.0, 0.0).q == 0.0);
  CHECK(MomentumTransfer<double>::from_angle(1.0, kPi / 2).q == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(MomentumTransfer<double>::from_angle(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(MomentumTransfer<double>::from_angle(1.0, 4.0), DomainError);
  testing::for_all(200, 5, [](testing::Gen& g, int) {
    const double p = g.log_uniform(0.01, 100), th = g.uniform(0, kPi);
    const auto t = MomentumTransfer<double>::from_angle(p, th);
    CHECK(t.q >= 0);
    CHECK(t.q <= 2 * p * (1 + 1e-15));
    CHECK(t.q == doctest::Approx(2 * p * std::sin(th / 2)));
  });
}

TEST_CASE("screened potential rebuilt from the propagator") {
  const auto v = yukawa_from_propagator(1.0, 0.5);
  CHECK(v.converged);
  CHECK(v.value == doctest::Approx(-std::exp(-0.5) / 0.5).epsilon(1e-9));
  // at r = 10 the screened value sits at the e^{-10}/10 scale
  const auto far = yukawa_from_propagator(1.0, 10.0);
  CHECK(std::abs(far.value) <= std::exp(-10.0) / 10 * (1 + 1e-6));
  CHECK(std::abs(far.value) == doctest::Approx(std::exp(-10.0) / 10).epsilon(1e-6));
  CHECK_THROWS_AS(yukawa_from_propagator(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(yukawa_from_propagator(1.0, 0.0), DomainError);
}

TEST_CASE("property: propagator transform matches the screened form") {
  testing::for_all(25, 12, [](testing::Gen& g, int) {
    const double mu = g.log_uniform(0.05, 3), r = g.log_uniform(0.1, 10);
    const auto v = yukawa_from_propagator(mu, r);
    CHECK(v.converged);
    CHECK(v.value == doctest::Approx(-std::exp(-mu * r) / r).epsilon(1e-8));
  });
}

TEST_CASE("mu -> 0 of the propagator potential recovers -1/r") {
  const std::vector<double> mus{0.08, 0.04, 0.02, 0.01};
  VecX<double> radii = VecX<double>::LinSpaced(20, 0.5, 10.0);
  const auto p = potential_from_propagator<double>(mus, radii);
  CHECK(p.all_converged());
  CHECK(p.max_relative_deviation < 1e-3);
  // extrapolation beats the smallest screening on its own
  for (Index i = 0; i < radii.size(); ++i)
    CHECK(std::abs(p.extrapolated[i] + 1 / radii[i]) < std::abs(p.values(i, 3) + 1 / radii[i]));
  for (Index i = 0; i < radii.size(); ++i) CHECK(p.extrapolated[i] == doctest::Approx(-1 / radii[i]).epsilon(1e-3));
  // screening only ever weakens the attraction
  for (Index i = 0; i < radii.size(); ++i)
    for (std::size_t j = 0; j < mus.size(); ++j) CHECK(std::abs(p.values(i, Index(j))) < 1 / radii[i]);
  const std::vector<double> rising{0.1, 0.2, 0.3};
  CHECK_THROWS_AS(potential_from_propagator<double>(rising, radii), PreconditionError);
  const std::vector<double> short_seq{0.2, 0.1};
  CHECK_THROWS_AS(potential_from_propagator<double>(short_seq, radii), PreconditionError);
}

TEST_CASE("yukawa Born amplitudes") {
  const auto back = born_amplitude(Potential<double>::yukawa(1.0, 0.5), 1.0, kPi);
  CHECK(back.amplitude == doctest::Approx(2.0 / 4.25).epsilon(1e-14));
  CHECK(back.method == ScatteringMethod::analytic_yukawa);
  CHECK(born_amplitude(Potential<double>::yukawa(1.0, 1.0), 1.0, kPi).amplitude == doctest::Approx(0.4));
  const double mu = 0.7;
  CHECK(born_amplitude(Potential<double>::yukawa(1.0, mu), 1.0, 0.0).amplitude ==
        doctest::Approx(2 / (mu * mu)).epsilon(1e-14));
  // repulsive screening flips the sign
  CHECK(born_amplitude(Potential<double>::yukawa(-1.0, 1.0), 1.0, kPi).amplitude == doctest::Approx(-0.4));
}

TEST_CASE("property: quadrature path agrees with the closed form") {
  testing::for_all(20, 21, [](testing::Gen& g, int) {
    const double mu = g.log_uniform(0.2, 3), p = g.log_uniform(0.2, 5), th = g.uniform(0.05, kPi);
    const auto pot = Potential<double>::yukawa(g.uniform(0.5, 2), mu);
    const auto a = born_amplitude(pot, p, th);
    const auto b = born_amplitude(pot, p, th, BornPath::quadrature);
    CHECK(b.method == ScatteringMethod::quadrature);
    CHECK(b.amplitude == doctest::Approx(a.amplitude).epsilon(1e-8));
  });
}

TEST_CASE("property: amplitude depends on (p, theta) only through q") {
  testing::for_all(100, 22, [](testing::Gen& g, int) {
    const auto pot = Potential<double>::yukawa(1.0, g.log_uniform(0.1, 3));
    const double p1 = g.uniform(1, 5), th1 = g.uniform(0.1, kPi);
    const double q = 2 * p1 * std::sin(th1 / 2);
    const double p2 = g.uniform(q / 2 * 1.0001, 10);
    const double th2 = 2 * std::asin(q / (2 * p2));
    CHECK(born_amplitude(pot, p1, th1).amplitude == doctest::Approx(born_amplitude(pot, p2, th2).amplitude));
  });
}

TEST_CASE("property: attractive yukawa dcs falls with angle and equals f^2") {
  testing::for_all(30, 23, [](testing::Gen& g, int) {
    const auto pot = Potential<double>::yukawa(g.uniform(0.1, 3), g.log_uniform(0.1, 3));
    const double p = g.log_uniform(0.1, 10);
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 36; ++k) {
      const auto r = born_amplitude(pot, p, kPi * k / 36);
      CHECK(r.dcs == r.amplitude * r.amplitude);
      CHECK(r.dcs < prev);
      prev = r.dcs;
    }
  });
}

TEST_CASE("tabulated decaying potential goes through quadrature") {
  VecX<double> r = VecX<double>::LinSpaced(20000, 0.001, 40.0), v(r.size());
  for (Index i = 0; i < r.size(); ++i) v[i] = -std::exp(-r[i] * r[i]);
  const auto table = Potential<double>::tabulated(r, v);
  // f = -(2/q) int -e^{-r^2} r sin(q r) dr = (sqrt(pi)/2) e^{-q^2/4}
  const auto res = born_amplitude(table, 1.0, kPi);
  CHECK(res.method == ScatteringMethod::quadrature);
  CHECK(res.amplitude == doctest::Approx(std::sqrt(kPi) / 2 * std::exp(-1.0)).epsilon(1e-5));

  VecX<double> flat(2), rs(2);
  rs << 1, 2;
  flat << -1, -1;
  CHECK_THROWS_AS(born_amplitude(Potential<double>::tabulated(rs, flat), 1.0, 1.0), PreconditionError);
}

TEST_CASE("bare Coulomb and confining potentials are rejected") {
  CHECK_THROWS_AS(born_amplitude(Potential<double>::coulomb(), 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(born_amplitude(Potential<double>::yukawa(1.0, 0.0), 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(born_amplitude(Potential<double>::harmonic(1.0), 1.0, 1.0), DomainError);
}

TEST_CASE("Rutherford limit") {
  CHECK(rutherford_cross_section(1.0, kPi) == doctest::Approx(0.25));
  CHECK(rutherford_cross_section(2.0, kPi / 2, 2.0) == doctest::Approx(4.0 / (4 * 16 * 0.25)));
  CHECK_THROWS_AS(rutherford_cross_section(1.0, 0.0), DomainError);
  const std::vector<double> mus{0.08, 0.04, 0.02, 0.01};
  const auto lim = screened_coulomb_limit<double>(1.0, kPi / 2, mus);
  CHECK(lim.relative_deviation < 1e-4);
  for (std::size_t j = 1; j < lim.dcs.size(); ++j) CHECK(lim.dcs[j] > lim.dcs[j - 1]);
  CHECK(lim.dcs.back() < lim.reference);
}
