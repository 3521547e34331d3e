#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "wavelab/quadrature.hpp"
#include "wavelab/wavefunction.hpp"

namespace wavelab {

/// a(p) of a spherically symmetric psi on p_i = i dp, i = 1..n (a radial
/// grid in p). The p = 0 value comes from the series limit and is kept
/// separately because the grid excludes the origin.
template <typename Scalar = double>
struct MomentumAmplitude {
  Grid<Scalar> p_grid;
  CVecX<Scalar> values;
  std::complex<Scalar> at_zero{};

  /// |a(p_max)| relative to the largest |a|; above 1e-6 the p range truncates psi.
  Scalar truncation_ratio() const {
    const Scalar peak = std::max(values.cwiseAbs().maxCoeff(), std::abs(at_zero));
    return peak > 0 ? std::abs(values[values.size() - 1]) / peak : Scalar(0);
  }
  bool truncated() const { return truncation_ratio() > Scalar(1e-6); }
};

struct MomentumOptions {
  double p_max = 40.0;
  Index bins = 4000;
};

namespace detail {

template <typename Scalar>
Scalar radial_transform_prefactor() {
  // (2 pi)^(-3/2) * 4 pi
  return Scalar(4) * pi<Scalar> / (Scalar(2) * pi<Scalar> * std::sqrt(Scalar(2) * pi<Scalar>));
}

/// Trapezoid weights for integrals over [0, x_n] of samples that vanish at 0.
template <typename Scalar>
VecX<Scalar> origin_trapezoid(const Grid<Scalar>& g) {
  VecX<Scalar> w = VecX<Scalar>::Constant(g.size(), g.spacing());
  w[g.size() - 1] /= 2;
  return w;
}

}  // namespace detail

/// (2 sqrt 2 / pi) (1 + p^2)^-2, the hydrogen ground-state amplitude.
template <typename Scalar>
Scalar hydrogen_amplitude_closed_form(Scalar p) {
  if (!(p >= 0) || !std::isfinite(p)) throw DomainError("momentum must be finite and nonnegative");
  const Scalar q = Scalar(1) + p * p;
  return Scalar(2) * std::sqrt(Scalar(2)) / pi<Scalar> / (q * q);
}

/// a(p) = (2 pi)^(-3/2) (4 pi / p) int r sin(p r) psi(r) dr by trapezoid quadrature on the radial nodes.
template <typename Scalar>
MomentumAmplitude<Scalar> decompose(const Wavefunction<Scalar>& psi, const MomentumOptions& opt = {}) {
  const auto& g = psi.grid();
  if (!g.is_radial()) throw PreconditionError("momentum decomposition needs a radial wavefunction");
  const Scalar peak = psi.values().cwiseAbs().maxCoeff();
  const Scalar edge = std::abs(psi[psi.size() - 1]);
  if (!(edge <= Scalar(1e-8) * peak))
    throw PreconditionError("wavefunction has not decayed at r_max: |psi(r_max)| = " + std::to_string(edge) +
                            " exceeds 1e-8 of its peak");

  auto pg = Grid<Scalar>::radial(Scalar(opt.p_max), opt.bins);
  const Scalar pref = detail::radial_transform_prefactor<Scalar>();
  const VecX<Scalar> r = g.nodes();
  const CVecX<Scalar> rpsi = (r.template cast<std::complex<Scalar>>().array() * psi.values().array() *
                              detail::origin_trapezoid(g).template cast<std::complex<Scalar>>().array())
                                 .matrix();
  CVecX<Scalar> a(pg.size());
  for (Index j = 0; j < pg.size(); ++j) {
    const Scalar p = pg[j];
    std::complex<Scalar> s{};
    for (Index i = 0; i < r.size(); ++i) s += rpsi[i] * std::sin(p * r[i]);
    a[j] = pref * s / p;
  }
  const std::complex<Scalar> a0 = pref * (rpsi.array() * r.template cast<std::complex<Scalar>>().array()).sum();
  return {std::move(pg), std::move(a), a0};
}

/// Linear interpolation of a(p), using the stored p = 0 value below the first node.
template <typename Scalar>
std::complex<Scalar> amplitude_at(const MomentumAmplitude<Scalar>& a, Scalar p) {
  if (!(p >= 0)) throw DomainError("momentum must be nonnegative");
  const auto& g = a.p_grid;
  if (p >= g.stop()) return a.values[g.size() - 1];
  if (p < g[0]) return a.at_zero + (a.values[0] - a.at_zero) * (p / g[0]);
  return g.interpolate(a.values, p);
}

/// int |a|^2 d^3p over the sampled range.
template <typename Scalar>
Scalar parseval_norm(const MomentumAmplitude<Scalar>& a) {
  return a.p_grid.volume_weights().dot(VecX<Scalar>(a.values.cwiseAbs2()));
}

template <typename Scalar>
struct Reconstruction {
  Wavefunction<Scalar> psi;
  bool truncated = false;
  Scalar truncation_ratio{};
};

/// Inverse radial transform onto a radial grid. Beyond p_max, a(p) is
/// continued as a(p_max) (p_max / p)^4, the decay of a cusp at the origin,
/// and that tail is integrated in closed form.
template <typename Scalar>
Reconstruction<Scalar> reconstruct(const MomentumAmplitude<Scalar>& a, const Grid<Scalar>& grid) {
  if (!grid.is_radial()) throw PreconditionError("reconstruction needs a radial grid");
  using Complex = std::complex<Scalar>;
  const auto& pg = a.p_grid;
  const Scalar pref = detail::radial_transform_prefactor<Scalar>();
  const Scalar p_max = pg.stop();
  const Complex tail_amp = a.values[pg.size() - 1] * std::pow(p_max, Scalar(4));
  const CVecX<Scalar> pa = (pg.nodes().template cast<Complex>().array() * a.values.array() *
                            detail::origin_trapezoid(pg).template cast<Complex>().array())
                               .matrix();
  CVecX<Scalar> out(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    const Scalar r = grid[i];
    Complex s{};
    for (Index j = 0; j < pg.size(); ++j) s += pa[j] * std::sin(pg[j] * r);
    const Scalar y = p_max * r;
    const Scalar f = std::sin(y) / (2 * y * y) + std::cos(y) / (2 * y) - (pi<Scalar> / 2 - sine_integral(y)) / 2;
    out[i] = pref * (s / r + tail_amp * r * f);
  }
  return {Wavefunction<Scalar>(grid, std::move(out)), a.truncated(), a.truncation_ratio()};
}

}  // namespace wavelab
