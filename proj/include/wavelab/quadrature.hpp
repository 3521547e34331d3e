#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "wavelab/grid.hpp"

namespace wavelab {

enum class QuadratureRule { trapezoid, simpson };

/// Composite Simpson weights; an even node count closes with the 3/8 rule
/// over the last three intervals.
template <typename Scalar>
VecX<Scalar> simpson_weights(const Grid<Scalar>& grid) {
  const Index n = grid.size();
  const Scalar h = grid.spacing();
  if (n < 4 && n % 2 == 0) throw PreconditionError("Simpson rule needs an odd node count or at least 4 nodes");
  VecX<Scalar> w = VecX<Scalar>::Zero(n);
  const Index simpson_end = (n % 2 == 1) ? n - 1 : n - 4;  // last node covered by 1/3 rule
  for (Index i = 0; i + 2 <= simpson_end; i += 2) {
    w[i] += h / 3;
    w[i + 1] += 4 * h / 3;
    w[i + 2] += h / 3;
  }
  if (n % 2 == 0) {
    const Index i = n - 4;
    w[i] += 3 * h / 8;
    w[i + 1] += 9 * h / 8;
    w[i + 2] += 9 * h / 8;
    w[i + 3] += 3 * h / 8;
  }
  return w;
}

namespace detail {

template <typename Derived, typename Scalar>
void check_samples(const Eigen::MatrixBase<Derived>& f, const Grid<Scalar>& grid) {
  if (f.size() != grid.size()) throw PreconditionError("sample count does not match grid");
  if (!f.allFinite()) throw DomainError("non-finite samples in integrand");
}

}  // namespace detail

/// Sum of weight_i * f_i over the grid's own measure (dx, or dr on radial grids).
template <typename Derived, typename Scalar>
typename Derived::Scalar integrate(const Eigen::MatrixBase<Derived>& f, const Grid<Scalar>& grid,
                                   QuadratureRule rule = QuadratureRule::trapezoid) {
  using T = typename Derived::Scalar;
  detail::check_samples(f, grid);
  if (rule == QuadratureRule::simpson) return (simpson_weights(grid).template cast<T>().array() * f.array()).sum();
  return (grid.weights().template cast<T>().array() * f.array()).sum();
}

/// Integral over the grid's volume element: dx on 1D grids, 4 pi r^2 dr on
/// radial grids (origin segment included).
template <typename Derived, typename Scalar>
typename Derived::Scalar integrate_volume(const Eigen::MatrixBase<Derived>& f, const Grid<Scalar>& grid) {
  using T = typename Derived::Scalar;
  detail::check_samples(f, grid);
  return (grid.volume_weights().template cast<T>().array() * f.array()).sum();
}

template <typename Scalar>
struct GaussLegendreRule {
  VecX<Scalar> nodes;    // on [-1, 1]
  VecX<Scalar> weights;
};

template <typename Scalar>
GaussLegendreRule<Scalar> gauss_legendre(int n) {
  GaussLegendreRule<Scalar> rule{VecX<Scalar>(n), VecX<Scalar>(n)};
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Scalar z = std::cos(pi<Scalar> * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p1 = 1, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        const Scalar p3 = p2;
        p2 = p1;
        p1 = ((2 * j - 1) * z * p2 - (j - 1) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1);
      const Scalar dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) <= 4 * std::numeric_limits<Scalar>::epsilon()) break;
    }
    const Scalar w = 2 / ((1 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  return rule;
}

template <typename Scalar, typename F>
auto apply_rule(const GaussLegendreRule<Scalar>& rule, F&& f, Scalar a, Scalar b) {
  const Scalar mid = (a + b) / 2, half = (b - a) / 2;
  decltype(f(a)) sum{};
  for (Index i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

template <typename Scalar>
struct IntegrationResult {
  Scalar value{};
  Scalar error{};
  Index panels = 0;
  bool converged = false;
};

namespace detail {

// floor_density: roundoff floor per unit length, from the integral of |f|
// over the whole range, so panels whose value cancels to ~0 still terminate.
template <typename Scalar, typename F>
Scalar adaptive_panel(const GaussLegendreRule<Scalar>& coarse, const GaussLegendreRule<Scalar>& fine, F& f,
                      Scalar a, Scalar b, Scalar fine_value, Scalar abs_tol, Scalar floor_density, int depth,
                      IntegrationResult<Scalar>& out) {
  const Scalar coarse_value = apply_rule(coarse, f, a, b);
  const Scalar err = std::abs(fine_value - coarse_value);
  const Scalar local_floor = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * std::abs(fine_value);
  const Scalar tol = std::max({abs_tol, floor_density * (b - a), local_floor});
  const bool unresolvable = (b - a) <= Scalar(64) * std::numeric_limits<Scalar>::epsilon() * std::max(std::abs(a), std::abs(b));
  if (err <= tol || depth <= 0 || unresolvable) {
    if (err > tol) out.converged = false;
    out.error += err;
    ++out.panels;
    return fine_value;
  }
  const Scalar m = (a + b) / 2;
  const Scalar left = apply_rule(fine, f, a, m);
  const Scalar right = apply_rule(fine, f, m, b);
  return adaptive_panel(coarse, fine, f, a, m, left, abs_tol / 2, floor_density, depth - 1, out) +
         adaptive_panel(coarse, fine, f, m, b, right, abs_tol / 2, floor_density, depth - 1, out);
}

}  // namespace detail

/// Adaptive bisection with a 10/20-point Gauss-Legendre pair as error estimate.
template <typename Scalar, typename F>
IntegrationResult<Scalar> integrate_adaptive(F&& f, Scalar a, Scalar b, Scalar rel_tol = Scalar(1e-13),
                                             Scalar abs_tol = Scalar(0), int max_depth = 40) {
  static const auto coarse = gauss_legendre<Scalar>(10);
  static const auto fine = gauss_legendre<Scalar>(20);
  IntegrationResult<Scalar> out;
  out.converged = true;
  const Scalar first = apply_rule(fine, f, a, b);
  const Scalar magnitude = apply_rule(fine, [&f](Scalar x) { return std::abs(f(x)); }, a, b);
  const Scalar tol = std::max(abs_tol, rel_tol * std::abs(first));
  const Scalar floor_density = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * magnitude / (b - a);
  out.value = detail::adaptive_panel(coarse, fine, f, a, b, first, tol, floor_density, max_depth, out);
  return out;
}

/// Wynn epsilon extrapolation of a sequence of partial sums; returns the
/// estimate from the highest even column that can be formed.
template <typename Scalar>
Scalar wynn_epsilon(std::span<const Scalar> sums) {
  const std::size_t n = sums.size();
  if (n == 0) return Scalar(0);
  if (n < 3) return sums.back();
  std::vector<Scalar> prev(n + 1, Scalar(0));  // column k-1
  std::vector<Scalar> cur(sums.begin(), sums.end());  // column k
  Scalar best = sums.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Scalar> next(n - k);
    for (std::size_t j = 0; j + k < n; ++j) {
      const Scalar diff = cur[j + 1] - cur[j];
      if (diff == Scalar(0) || !std::isfinite(diff)) return best;
      next[j] = prev[j + 1] + Scalar(1) / diff;
    }
    prev.assign(cur.begin(), cur.end());
    cur = std::move(next);
    if (k % 2 == 0) best = cur.back();
  }
  return best;
}

template <typename Scalar>
struct SineTransformOptions {
  /// Length scale of structure in g near the origin; the first
  /// ceil(32 * inner_scale / half_period) half periods are integrated adaptively.
  Scalar inner_scale = 0;
  /// Finite upper limit: the panels are summed up to it without extrapolation.
  Scalar upper = std::numeric_limits<Scalar>::infinity();
  Scalar tolerance = Scalar(1e-12);
  Index min_panels = 12;
  Index max_panels = 20000;
};

/// Integral of g(x) sin(omega x) over [0, upper) by integrate-then-sum over
/// half periods. Each half period gets a 20-point Gauss-Legendre rule (40
/// points per period); the alternating partial sums of an infinite range are
/// accelerated with Wynn's epsilon algorithm, which handles envelopes decaying
/// as slowly as 1/x.
template <typename Scalar, typename F>
IntegrationResult<Scalar> sine_transform_integral(F&& g, Scalar omega, const SineTransformOptions<Scalar>& opt = {}) {
  if (!(omega > 0)) throw DomainError("sine transform needs omega > 0");
  static const auto rule = gauss_legendre<Scalar>(20);
  const Scalar half_period = pi<Scalar> / omega;
  auto integrand = [&](Scalar x) { return g(x) * std::sin(omega * x); };

  IntegrationResult<Scalar> out;
  const Scalar head_len = std::ceil(Scalar(32) * opt.inner_scale / half_period) * half_period;
  const Scalar head_end = std::min(head_len, opt.upper);
  Scalar head = 0;
  Scalar x = 0;
  bool head_ok = true;
  Index k = 0;  // panel ends at k * half_period, not accumulated, so they stay on the zeros of sin
  while (x < head_end) {
    const Scalar b = std::min(Scalar(++k) * half_period, head_end);
    // later half periods are held to the size of what has been accumulated, not to their own (shrinking) size
    const Scalar abs_tol = opt.tolerance * Scalar(1e-2) * std::abs(head);
    auto r = integrate_adaptive<Scalar>(integrand, x, b, opt.tolerance * Scalar(1e-2), abs_tol, 60);
    head += r.value;
    out.error += r.error;
    out.panels += r.panels;
    head_ok = head_ok && r.converged;
    x = b;
  }

  std::vector<Scalar> partial;
  Scalar sum = head;
  Scalar peak = std::abs(head);
  Scalar estimate = sum, last_estimate = std::numeric_limits<Scalar>::quiet_NaN();
  int stable = 0;
  const bool finite_range = std::isfinite(opt.upper);
  for (Index j = 0; j < opt.max_panels; ++j) {
    if (finite_range && x >= opt.upper) {
      out.converged = head_ok;
      break;
    }
    const Scalar next = Scalar(++k) * half_period;
    const Scalar b = finite_range ? std::min(next, opt.upper) : next;
    const Scalar term = apply_rule(rule, integrand, x, b);
    ++out.panels;
    x = b;
    sum += term;
    peak = std::max(peak, std::abs(term));
    if (finite_range) {
      estimate = sum;
      continue;
    }
    partial.push_back(sum);
    if (std::abs(term) <= std::numeric_limits<Scalar>::epsilon() * peak) {
      estimate = sum;
      out.converged = head_ok;
      break;
    }
    const std::size_t window = std::min<std::size_t>(partial.size(), 40);
    estimate = wynn_epsilon<Scalar>(std::span<const Scalar>(partial).last(window));
    if (j + 1 >= opt.min_panels && std::isfinite(last_estimate) &&
        std::abs(estimate - last_estimate) <= opt.tolerance * std::max(std::abs(estimate), Scalar(1e-3) * peak)) {
      if (++stable >= 3) {
        out.converged = head_ok;
        out.error += std::abs(estimate - last_estimate);
        break;
      }
    } else {
      stable = 0;
    }
    last_estimate = estimate;
  }
  out.value = estimate;
  return out;
}

template <typename Scalar>
struct Extrapolation {
  Scalar value{};
  Scalar error_estimate{};
};

/// Neville polynomial extrapolation of y(x) to x = 0 through every sample.
template <typename Scalar>
Extrapolation<Scalar> extrapolate_to_zero(std::span<const Scalar> xs, std::span<const Scalar> ys) {
  const std::size_t n = xs.size();
  if (n == 0 || ys.size() != n) throw PreconditionError("extrapolation needs matching, non-empty samples");
  std::vector<Scalar> p(ys.begin(), ys.end());
  Scalar previous_order = p.back();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      const Scalar xi = xs[i], xj = xs[i + m];
      if (xi == xj) throw DomainError("extrapolation abscissae must be distinct");
      p[i] = (-xj * p[i] + xi * p[i + 1]) / (xi - xj);
    }
    if (m == n - 2) previous_order = p[1];
  }
  return {p[0], n > 1 ? std::abs(p[0] - previous_order) : Scalar(0)};
}

/// Sine integral Si(x) = int_0^x sin(t)/t dt.
template <typename Scalar>
Scalar sine_integral(Scalar x) {
  if (x < 0) return -sine_integral(-x);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  if (x < Scalar(2)) {
    Scalar sum = 0, term = x;
    for (int k = 0; k < 200; ++k) {
      const Scalar contrib = term / Scalar(2 * k + 1);
      sum += contrib;
      if (std::abs(contrib) < eps * std::abs(sum)) break;
      term *= -x * x / (Scalar(2 * k + 2) * Scalar(2 * k + 3));
    }
    return sum;
  }
  // Modified Lentz evaluation of the continued fraction for E1(ix).
  using Complex = std::complex<Scalar>;
  const Scalar tiny = std::numeric_limits<Scalar>::min() / eps;
  Complex b(1, x);
  Complex c(1 / tiny, 0);
  Complex d = Complex(1) / b;
  Complex h = d;
  for (int i = 2; i < 1000; ++i) {
    const Scalar a = -Scalar(i - 1) * Scalar(i - 1);
    b += Complex(2, 0);
    d = Complex(1) / (a * d + b);
    c = b + a / c;
    const Complex del = c * d;
    h *= del;
    if (std::abs(del.real() - 1) + std::abs(del.imag()) < eps) break;
  }
  h *= Complex(std::cos(x), -std::sin(x));
  return pi<Scalar> / 2 + h.imag();
}

}  // namespace wavelab
