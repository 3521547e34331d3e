#include <doctest.h>

#include <limits>

#include "support.hpp"
#include "wavelab/units.hpp"

using namespace wavelab;

TEST_CASE("hartree to eV at the quoted precision") {
  CHECK(hartree_to_ev(-0.5) == doctest::Approx(-13.6).epsilon(1e-3));
  CHECK(hartree_to_ev(0.0) == 0.0);
  CHECK(hartree_to_ev(1.0) == doctest::Approx(27.2).epsilon(1e-3));
}

TEST_CASE("bohr to meters at the quoted precision") {
  CHECK(bohr_to_meters(1.0) == doctest::Approx(5.29e-11).epsilon(1e-3));
  CHECK(bohr_to_meters(0.0) == 0.0);
  CHECK(bohr_to_meters(2.0) == doctest::Approx(1.058e-10).epsilon(1e-3));
}

TEST_CASE("non-finite input is rejected") {
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(hartree_to_ev(nan), DomainError);
  CHECK_THROWS_AS(ev_to_hartree(inf), DomainError);
  CHECK_THROWS_AS(bohr_to_meters(-inf), DomainError);
  CHECK_THROWS_AS(meters_to_bohr(nan), DomainError);
}

TEST_CASE("custom constants are honoured") {
  const UnitSystem<double> u{27.0, 5e-11};
  CHECK(hartree_to_ev(2.0, u) == 54.0);
  CHECK(bohr_to_meters(2.0, u) == 1e-10);
}

TEST_CASE("property: conversions round-trip to 1e-12 relative") {
  testing::for_all(500, 11, [](testing::Gen& g, int) {
    const double x = (g.coin() ? 1 : -1) * g.log_uniform(1e-9, 1e9);
    CHECK(ev_to_hartree(hartree_to_ev(x)) == doctest::Approx(x).epsilon(1e-12));
    CHECK(meters_to_bohr(bohr_to_meters(x)) == doctest::Approx(x).epsilon(1e-12));
  });
}
