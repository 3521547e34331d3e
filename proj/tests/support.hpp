// Shared test helpers: seeded generators for property tests and independent
// numerical oracles. Nothing here calls into the library's solvers.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace testing {

constexpr double kPi = std::numbers::pi;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937_64 rng_;
};

/// Runs body(gen, case_index) for `cases` seeded cases.
template <typename F>
void for_all(int cases, std::uint64_t seed, F&& body) {
  Gen gen(seed);
  for (int i = 0; i < cases; ++i) body(gen, i);
}

namespace oracle {

/// Composite Simpson on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

/// Eigenvalues of the symmetric tridiagonal matrix via Eigen's QL iteration.
inline Eigen::VectorXd tridiagonal_eigenvalues(const Eigen::VectorXd& diag, const Eigen::VectorXd& off) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// Outward-only Numerov shooting for u'' = 2 (V_eff - E) u from u(0) = 0:
/// returns u at r_max. Its sign flips as E crosses an eigenvalue.
inline double shoot_to_wall(const std::function<double(double)>& v_eff, double energy, double r_max, int n) {
  const double h = r_max / n;
  auto k2 = [&](double r) { return 2 * (energy - v_eff(r)); };
  auto f = [&](double r) { return 1 + h * h * k2(r) / 12; };
  double u0 = 0, u1 = h;  // the first step only fixes normalization; the Coulomb cusp enters via r = h onwards
  double r = h;
  for (int i = 1; i < n; ++i) {
    const double u2 = ((12 - 10 * f(r)) * u1 - (i == 1 ? 0.0 : f(r - h) * u0)) / f(r + h);
    u0 = u1;
    u1 = u2;
    r += h;
    const double m = std::abs(u1);
    if (m > 1e200) {
      u0 /= m;
      u1 /= m;
    }
  }
  return u1;
}

/// Bisection on the sign of shoot_to_wall.
inline double shooting_eigenvalue(const std::function<double(double)>& v_eff, double lo, double hi, double r_max,
                                  int n) {
  double slo = shoot_to_wall(v_eff, lo, r_max, n);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double sm = shoot_to_wall(v_eff, mid, r_max, n);
    if ((sm > 0) == (slo > 0)) {
      lo = mid;
      slo = sm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
}  // namespace testing
