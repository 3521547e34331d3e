#include <doctest.h>

#include <cmath>
#include <sstream>

#include "support.hpp"
#include "wavelab/potential.hpp"

using namespace wavelab;

TEST_CASE("evaluate: coulomb and yukawa") {
  const auto c = Potential<double>::coulomb();
  CHECK(evaluate(c, 1.0) == -1.0);
  CHECK(evaluate(c, 2.0) == -0.5);
  const auto y = Potential<double>::yukawa(1.0, 0.5);
  CHECK(evaluate(y, 2.0) == doctest::Approx(-std::exp(-1.0) / 2).epsilon(1e-14));
  CHECK(evaluate(y, 2.0) == doctest::Approx(evaluate(c, 2.0) * std::exp(-0.5 * 2.0)).epsilon(1e-14));
  CHECK(evaluate(Potential<double>::harmonic(2.0), 3.0) == doctest::Approx(18.0));
}

TEST_CASE("singular kinds reject r <= 0") {
  CHECK_THROWS_AS(evaluate(Potential<double>::coulomb(), 0.0), DomainError);
  CHECK_THROWS_AS(evaluate(Potential<double>::yukawa(1.0, 1.0), -1.0), DomainError);
  CHECK(evaluate(Potential<double>::harmonic(1.0), 0.0) == 0.0);
  CHECK_THROWS_AS(Potential<double>::yukawa(1.0, -0.1), DomainError);
}

TEST_CASE("tabulated potential: linear interpolation, clamping, validation") {
  VecX<double> r(3), v(3);
  r << 1, 2, 4;
  v << -2, -1, 0;
  const auto t = Potential<double>::tabulated(r, v);
  CHECK(t(1.5) == doctest::Approx(-1.5));
  CHECK(t(3.0) == doctest::Approx(-0.5));
  CHECK(t(0.5) == -2.0);
  CHECK(t(10.0) == 0.0);
  CHECK(t.asymptotic_value() == 0.0);

  VecX<double> bad(3);
  bad << 1, 1, 2;
  CHECK_THROWS_AS(Potential<double>::tabulated(bad, v), PreconditionError);
  CHECK_THROWS_AS(Potential<double>::tabulated(VecX<double>::Ones(1), VecX<double>::Ones(1)), PreconditionError);
}

TEST_CASE("table parsing: comments, blank lines, line-numbered errors") {
  std::istringstream good("# r V\n0.5 -2\n\n1.0 -1  # inline\n2.0 0\n");
  const auto t = Potential<double>::parse_table(good, "well.txt");
  CHECK(t.table_radii().size() == 3);
  CHECK(t(0.75) == doctest::Approx(-1.5));

  std::istringstream three("1 2 3\n");
  try {
    Potential<double>::parse_table(three, "x.txt");
    FAIL("expected an error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("x.txt:1") != std::string::npos);
  }
  std::istringstream words("1 -1\nabc def\n");
  CHECK_THROWS_AS(Potential<double>::parse_table(words), PreconditionError);
  CHECK_THROWS_AS(Potential<double>::load_table("/nonexistent/table.txt"), PreconditionError);
}

TEST_CASE("power-law exponents and asymptotes") {
  CHECK(*Potential<double>::coulomb().power_law_exponent() == -1);
  CHECK(*Potential<double>::yukawa(1.0, 0.0).power_law_exponent() == -1);
  CHECK(*Potential<double>::harmonic(1.0).power_law_exponent() == 2);
  CHECK_FALSE(Potential<double>::yukawa(1.0, 1.0).power_law_exponent().has_value());
  CHECK(std::isinf(Potential<double>::harmonic(1.0).asymptotic_value()));
}

TEST_CASE("sampling on a line uses the soft-core distance") {
  const auto g = Grid<double>::uniform(-2.0, 2.0, 5);
  const VecX<double> v = sample(Potential<double>::coulomb(), g, 1.0);
  CHECK(v[2] == -1.0);
  CHECK(v[0] == doctest::Approx(-1 / std::sqrt(5.0)));
  CHECK_THROWS_AS(sample(Potential<double>::coulomb(), g), DomainError);
}

TEST_CASE("property: coulomb is strictly increasing in r") {
  testing::for_all(500, 3, [](testing::Gen& g, int) {
    const auto c = Potential<double>::coulomb(g.uniform(0.1, 5));
    const double a = g.log_uniform(1e-6, 1e6), b = a * (1 + g.log_uniform(1e-9, 10));
    CHECK(evaluate(c, a) < evaluate(c, b));
  });
}

TEST_CASE("property: yukawa with mu = 0 equals coulomb") {
  testing::for_all(300, 4, [](testing::Gen& g, int) {
    const double s = g.uniform(-3, 3), r = g.log_uniform(1e-6, 1e4);
    CHECK(evaluate(Potential<double>::yukawa(s, 0.0), r) == evaluate(Potential<double>::coulomb(s), r));
  });
}

TEST_CASE("property: yukawa approaches coulomb as mu -> 0") {
  for (double mu : {0.1, 0.01}) {
    const auto y = Potential<double>::yukawa(1.0, mu);
    const auto c = Potential<double>::coulomb();
    testing::for_all(300, 6, [&](testing::Gen& g, int) {
      const double r = g.uniform(0.1, 10);
      const double dev = std::abs(evaluate(y, r) - evaluate(c, r)) / std::abs(evaluate(c, r));
      CHECK(dev <= mu * 10 + 1e-12);
    });
  }
}
