#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "wavelab/potential.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab {

/// Static momentum transfer: energy transfer q0 is zero, |q| = 2 p sin(theta / 2).
template <typename Scalar = double>
struct MomentumTransfer {
  Scalar p{};
  Scalar theta{};
  Scalar q{};
  Scalar q0{};

  static MomentumTransfer from_angle(Scalar p, Scalar theta) {
    if (!(p > 0) || !std::isfinite(p)) throw DomainError("incident momentum must be finite and positive");
    if (!(theta >= 0 && theta <= pi<Scalar>)) throw DomainError("scattering angle must lie in [0, pi]");
    return {p, theta, Scalar(2) * p * std::sin(theta / 2), Scalar(0)};
  }
};

enum class ScatteringMethod { analytic_yukawa, quadrature, coulomb_limit };

inline const char* to_string(ScatteringMethod m) {
  switch (m) {
    case ScatteringMethod::analytic_yukawa: return "analytic-yukawa";
    case ScatteringMethod::quadrature: return "quadrature";
    case ScatteringMethod::coulomb_limit: return "coulomb-limit";
  }
  return "?";
}

template <typename Scalar = double>
struct ScatteringResult {
  MomentumTransfer<Scalar> transfer;
  Scalar amplitude{};
  Scalar dcs{};
  ScatteringMethod method = ScatteringMethod::analytic_yukawa;
};

/// 1 / |q|^2 of the static photon propagator.
template <typename Scalar>
Scalar propagator_weight(Scalar q) {
  if (!(q > 0)) throw DomainError("propagator is singular at q = 0 (forward scattering)");
  return Scalar(1) / (q * q);
}

template <typename Scalar>
Scalar propagator_weight(const MomentumTransfer<Scalar>& t) {
  return propagator_weight(t.q);
}

/// V_mu(r) = -(2 / (pi r)) int_0^inf k sin(k r) / (k^2 + mu^2) dk, the radial
/// transform of the screened propagator 4 pi / (k^2 + mu^2). Equals -exp(-mu r)/r.
template <typename Scalar>
IntegrationResult<Scalar> yukawa_from_propagator(Scalar mu, Scalar r, Scalar tolerance = Scalar(1e-12)) {
  if (!(mu > 0)) throw DomainError("screening mu must be positive");
  if (!(r > 0)) throw DomainError("radius must be positive");
  SineTransformOptions<Scalar> opt;
  opt.inner_scale = mu;
  opt.tolerance = tolerance;
  const Scalar mu2 = mu * mu;
  auto res = sine_transform_integral([mu2](Scalar k) { return k / (k * k + mu2); }, r, opt);
  const Scalar scale = Scalar(-2) / (pi<Scalar> * r);
  res.value *= scale;
  res.error *= std::abs(scale);
  return res;
}

template <typename Scalar = double>
struct PropagatorPotential {
  std::vector<Scalar> mus;
  VecX<Scalar> radii;
  MatX<Scalar> values;              // values(i, j): V at radii[i] for mus[j]
  std::vector<bool> converged;      // per mu
  VecX<Scalar> extrapolated;        // mu -> 0
  VecX<Scalar> extrapolation_error;
  Scalar max_relative_deviation{};  // vs -1/r over radii in [0.5, 10]

  bool all_converged() const {
    for (bool c : converged)
      if (!c) return false;
    return true;
  }
  Potential<Scalar> as_potential() const {
    return Potential<Scalar>::tabulated(radii, extrapolated);
  }
};

/// Screened potentials for a decreasing mu sequence and their polynomial
/// extrapolation to mu = 0, compared against the bare -1/r.
template <typename Scalar>
PropagatorPotential<Scalar> potential_from_propagator(std::span<const Scalar> mus, const VecX<Scalar>& radii) {
  if (mus.size() < 3) throw PreconditionError("mu sequence needs at least 3 entries");
  for (std::size_t j = 0; j < mus.size(); ++j) {
    if (!(mus[j] > 0)) throw DomainError("screening values must be positive");
    if (j > 0 && !(mus[j] < mus[j - 1])) throw PreconditionError("mu sequence must be strictly decreasing");
  }
  if (radii.size() < 2) throw PreconditionError("need at least two radii");
  PropagatorPotential<Scalar> out;
  out.mus.assign(mus.begin(), mus.end());
  out.radii = radii;
  out.values.resize(radii.size(), static_cast<Index>(mus.size()));
  out.converged.assign(mus.size(), true);
  for (std::size_t j = 0; j < mus.size(); ++j) {
    for (Index i = 0; i < radii.size(); ++i) {
      const auto r = yukawa_from_propagator(mus[j], radii[i]);
      out.values(i, static_cast<Index>(j)) = r.value;
      if (!r.converged) out.converged[j] = false;
    }
  }
  out.extrapolated.resize(radii.size());
  out.extrapolation_error.resize(radii.size());
  std::vector<Scalar> ys(mus.size());
  for (Index i = 0; i < radii.size(); ++i) {
    for (std::size_t j = 0; j < mus.size(); ++j) ys[j] = out.values(i, static_cast<Index>(j));
    const auto e = extrapolate_to_zero<Scalar>(mus, ys);
    out.extrapolated[i] = e.value;
    out.extrapolation_error[i] = e.error_estimate;
    if (radii[i] >= Scalar(0.5) && radii[i] <= Scalar(10)) {
      const Scalar bare = Scalar(-1) / radii[i];
      out.max_relative_deviation = std::max(out.max_relative_deviation, std::abs(e.value - bare) / std::abs(bare));
    }
  }
  return out;
}

enum class BornPath { automatic, quadrature };

namespace detail {

template <typename Scalar>
Scalar born_quadrature(const Potential<Scalar>& pot, Scalar q) {
  Scalar upper{};
  if (pot.kind() == PotentialKind::yukawa) {
    upper = std::log(Scalar(1e12)) / pot.screening();  // envelope exp(-mu r) below 1e-12
  } else {
    const auto& rs = pot.table_radii();
    const auto& vs = pot.table_values();
    const Index last = rs.size() - 1;
    const Scalar peak = (vs.array() * rs.array()).abs().maxCoeff();
    if (!(std::abs(vs[last] * rs[last]) <= Scalar(1e-8) * peak))
      throw PreconditionError("tabulated potential has not decayed at its last radius");
    upper = rs[last];
  }
  auto g = [&pot](Scalar r) { return pot(r) * r; };
  if (q == 0) {
    auto r2v = [&g](Scalar r) { return g(r) * r; };
    return Scalar(-2) * integrate_adaptive<Scalar>(r2v, Scalar(0), upper, Scalar(1e-13)).value;
  }
  SineTransformOptions<Scalar> opt;
  opt.upper = upper;
  opt.inner_scale = upper / Scalar(32);  // whole finite range integrated adaptively per half period
  opt.tolerance = Scalar(1e-12);
  const auto res = sine_transform_integral(g, q, opt);
  if (!res.converged) throw SolverError("Born quadrature did not converge at q = " + std::to_string(q));
  return Scalar(-2) * res.value / q;
}

}  // namespace detail

/// First Born amplitude f = -(2/q) int V(r) r sin(q r) dr. Yukawa input uses
/// the closed form 2 s / (q^2 + mu^2) unless the quadrature path is requested.
template <typename Scalar>
ScatteringResult<Scalar> born_amplitude(const Potential<Scalar>& pot, Scalar p, Scalar theta,
                                        BornPath path = BornPath::automatic) {
  const auto t = MomentumTransfer<Scalar>::from_angle(p, theta);
  const bool bare_coulomb = pot.kind() == PotentialKind::coulomb ||
                            (pot.kind() == PotentialKind::yukawa && pot.screening() == 0);
  if (bare_coulomb)
    throw DomainError("unscreened Coulomb amplitude diverges forward; use a yukawa potential with mu > 0 and the "
                      "screened limit");
  if (pot.kind() == PotentialKind::harmonic) throw DomainError("Born amplitude needs a decaying potential");
  ScatteringResult<Scalar> out{t, {}, {}, ScatteringMethod::quadrature};
  if (pot.kind() == PotentialKind::yukawa && path == BornPath::automatic) {
    const Scalar mu = pot.screening();
    out.amplitude = Scalar(2) * pot.strength() / (t.q * t.q + mu * mu);
    out.method = ScatteringMethod::analytic_yukawa;
  } else {
    out.amplitude = detail::born_quadrature(pot, t.q);
  }
  out.dcs = out.amplitude * out.amplitude;
  return out;
}

/// Rutherford cross-section s^2 / (4 p^4 sin^4(theta/2)).
template <typename Scalar>
Scalar rutherford_cross_section(Scalar p, Scalar theta, Scalar strength = 1) {
  const auto t = MomentumTransfer<Scalar>::from_angle(p, theta);
  if (t.q == 0) throw DomainError("Rutherford cross-section diverges at theta = 0");
  const Scalar s = std::sin(theta / 2);
  return strength * strength / (Scalar(4) * p * p * p * p * s * s * s * s);
}

template <typename Scalar = double>
struct ScreenedLimit {
  std::vector<Scalar> mus;
  std::vector<Scalar> dcs;  // per mu
  Scalar value{};
  Scalar error_estimate{};
  Scalar reference{};       // Rutherford
  Scalar relative_deviation{};
};

/// dcs of the quadrature path at each mu, extrapolated to mu = 0 as a
/// polynomial in mu^2 (the screened dcs is even in mu).
template <typename Scalar>
ScreenedLimit<Scalar> screened_coulomb_limit(Scalar p, Scalar theta, std::span<const Scalar> mus,
                                             Scalar strength = 1) {
  if (mus.size() < 2) throw PreconditionError("screened limit needs at least two mu values");
  ScreenedLimit<Scalar> out;
  out.mus.assign(mus.begin(), mus.end());
  std::vector<Scalar> x;
  for (Scalar mu : mus) {
    const auto r = born_amplitude(Potential<Scalar>::yukawa(strength, mu), p, theta, BornPath::quadrature);
    out.dcs.push_back(r.dcs);
    x.push_back(mu * mu);
  }
  const auto e = extrapolate_to_zero<Scalar>(x, out.dcs);
  out.value = e.value;
  out.error_estimate = e.error_estimate;
  out.reference = rutherford_cross_section(p, theta, strength);
  out.relative_deviation = std::abs(out.value - out.reference) / out.reference;
  return out;
}

}  // namespace wavelab
