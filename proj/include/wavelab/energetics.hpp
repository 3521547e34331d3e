#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wavelab/derivatives.hpp"
#include "wavelab/potential.hpp"
#include "wavelab/quadrature.hpp"

namespace wavelab {

template <typename Scalar>
struct EnergyTotals {
  Scalar kinetic{};    // int (1/2)|grad psi|^2 dV
  Scalar balancing{};  // int -(1/2) Re psi* lap psi dV
  Scalar potential{};  // int V |psi|^2 dV
  Scalar energy{};     // balancing + potential
};

/// Fields extrapolated to r = 0 on radial grids. For a Coulomb-singular V the
/// balancing and potential fields are reported as opposite infinities while
/// their sum stays finite.
template <typename Scalar>
struct OriginFields {
  Scalar psi2{};
  Scalar kinetic{};
  Scalar balancing{};
  Scalar potential{};
  Scalar energy{};
};

/// Pointwise energy fields on the nodes of a grid.
///
///   ke      (1/2)|grad psi|^2, nonnegative, built from midpoint differences
///   c       -(1/2) Re(psi* lap psi), the term appearing in the stationary equation
///   c_imag  the imaginary part of the same product (zero for real psi)
///   pe      V |psi|^2
///   e_field c + pe
///
/// ke and c integrate to the same total for decaying psi, but differ pointwise.
template <typename Scalar>
struct EnergyDensities {
  Grid<Scalar> grid;
  VecX<Scalar> psi2, ke, c, c_imag, pe, e_field;
  EnergyTotals<Scalar> totals;
  std::optional<OriginFields<Scalar>> origin;
  Scalar boundary_amplitude{};   // |psi| at the open grid ends relative to max |psi|
  bool surface_term_vanishes = false;

  Scalar surface_term_mismatch() const {
    return std::abs(totals.kinetic - totals.balancing) / std::abs(totals.kinetic);
  }
};

namespace detail {

template <typename Scalar>
VecX<Scalar> kinetic_at_nodes(const Wavefunction<Scalar>& psi) {
  const VecX<Scalar> mid = staggered_gradient(psi).cwiseAbs2() / Scalar(2);
  const Index n = psi.size();
  VecX<Scalar> ke(n);
  // Radial midpoint i sits left of node i; 1D midpoint i sits right of node i.
  const Index left_offset = psi.grid().is_radial() ? 0 : -1;
  for (Index i = 0; i < n; ++i) {
    const Index l = i + left_offset, r = l + 1;
    const bool has_l = l >= 0, has_r = r < mid.size();
    if (has_l && has_r) ke[i] = (mid[l] + mid[r]) / 2;
    else ke[i] = has_l ? mid[l] : mid[r];
  }
  return ke;
}

template <typename Scalar>
Scalar relative_boundary_amplitude(const Wavefunction<Scalar>& psi) {
  const Scalar peak = psi.values().cwiseAbs().maxCoeff();
  if (!(peak > 0)) return Scalar(0);
  Scalar edge = std::abs(psi[psi.size() - 1]);
  if (!psi.grid().is_radial()) edge = std::max(edge, std::abs(psi[0]));
  return edge / peak;
}

}  // namespace detail

template <typename Scalar>
EnergyDensities<Scalar> energy_densities(const Wavefunction<Scalar>& psi, const VecX<Scalar>& potential) {
  const auto& grid = psi.grid();
  if (potential.size() != grid.size()) throw PreconditionError("potential samples do not match grid");
  const CVecX<Scalar> product = psi.values().conjugate().cwiseProduct(laplacian(psi)) * Scalar(-0.5);

  EnergyDensities<Scalar> d{grid, {}, {}, {}, {}, {}, {}, {}, std::nullopt, {}, false};
  d.psi2 = psi.density();
  d.ke = detail::kinetic_at_nodes(psi);
  d.c = product.real();
  d.c_imag = product.imag();
  d.pe = potential.cwiseProduct(d.psi2);
  d.e_field = d.c + d.pe;

  d.totals.kinetic = kinetic_integral(psi) / Scalar(2);
  d.totals.balancing = integrate_volume(d.c, grid);
  d.totals.potential = integrate_volume(d.pe, grid);
  d.totals.energy = d.totals.balancing + d.totals.potential;

  d.boundary_amplitude = detail::relative_boundary_amplitude(psi);
  d.surface_term_vanishes = d.boundary_amplitude < Scalar(1e-10);

  if (grid.is_radial()) {
    d.origin = OriginFields<Scalar>{extrapolate_to_origin(d.psi2), extrapolate_to_origin(d.ke),
                                    extrapolate_to_origin(d.c), extrapolate_to_origin(d.pe),
                                    extrapolate_to_origin(d.e_field)};
  }
  return d;
}

template <typename Scalar>
EnergyDensities<Scalar> energy_densities(const Wavefunction<Scalar>& psi, const Potential<Scalar>& pot,
                                         Scalar softening = 0) {
  auto d = energy_densities(psi, sample(pot, psi.grid(), softening));
  if (d.origin && pot.singular_at_origin() && pot.strength() != 0 && d.origin->psi2 > 0) {
    const Scalar inf = std::numeric_limits<Scalar>::infinity();
    const Scalar sign = pot.strength() > 0 ? Scalar(1) : Scalar(-1);
    d.origin->potential = -sign * inf;
    d.origin->balancing = sign * inf;
  }
  return d;
}

/// Pointwise residual n = E psi + (1/2) lap psi - V psi of the stationary equation.
template <typename Scalar>
struct ResidualField {
  CVecX<Scalar> values;
  Scalar sup_norm{};
  Scalar sup_location{};
};

template <typename Scalar>
ResidualField<Scalar> residual(const Wavefunction<Scalar>& psi, const VecX<Scalar>& potential, Scalar energy) {
  if (potential.size() != psi.size()) throw PreconditionError("potential samples do not match grid");
  ResidualField<Scalar> out;
  out.values = energy * psi.values() + laplacian(psi) / Scalar(2) -
               potential.template cast<std::complex<Scalar>>().cwiseProduct(psi.values());
  Index where = 0;
  out.sup_norm = out.values.cwiseAbs().maxCoeff(&where);
  out.sup_location = psi.grid()[where];
  return out;
}

template <typename Scalar>
ResidualField<Scalar> residual(const Wavefunction<Scalar>& psi, const Potential<Scalar>& pot, Scalar energy,
                               Scalar softening = 0) {
  return residual(psi, sample(pot, psi.grid(), softening), energy);
}

template <typename Scalar>
struct Check {
  std::string name;
  Scalar deviation{};
  Scalar tolerance{};
  bool pass = false;
};

template <typename Scalar>
struct VirialReport {
  int exponent = 0;
  Scalar reference_radius{};
  Check<Scalar> global;        // 2 KE_total - n PE_total
  Check<Scalar> local_ke_c;    // KE(r0) = C(r0)
  Check<Scalar> local_energy;  // E(r0) = KE(r0) + PE(r0)
  Check<Scalar> local_virial;  // KE(r0) = -PE(r0)/2
  Scalar ke_at_reference{}, c_at_reference{}, pe_at_reference{}, e_at_reference{};

  bool global_pass() const { return global.pass; }
  bool pass() const { return global.pass && local_ke_c.pass && local_energy.pass && local_virial.pass; }
};

/// Virial checks for a power-law potential V ~ r^n. The global check is
/// absolute; the local ones at reference_radius are relative to KE(r0).
template <typename Scalar>
VirialReport<Scalar> virial_report(const EnergyDensities<Scalar>& d, int exponent, Scalar reference_radius = 1,
                                   Scalar tolerance = Scalar(1e-4)) {
  VirialReport<Scalar> v;
  v.exponent = exponent;
  v.reference_radius = reference_radius;
  const Scalar g = 2 * d.totals.kinetic - Scalar(exponent) * d.totals.potential;
  v.global = {"2 KE_total - n PE_total", std::abs(g), tolerance, std::abs(g) <= tolerance};

  v.ke_at_reference = d.grid.interpolate(d.ke, reference_radius);
  v.c_at_reference = d.grid.interpolate(d.c, reference_radius);
  v.pe_at_reference = d.grid.interpolate(d.pe, reference_radius);
  v.e_at_reference = d.grid.interpolate(d.e_field, reference_radius);
  const Scalar scale = std::abs(v.ke_at_reference);
  auto rel = [&](Scalar x) { return scale > 0 ? std::abs(x) / scale : std::abs(x); };
  const Scalar a = rel(v.ke_at_reference - v.c_at_reference);
  const Scalar b = rel(v.e_at_reference - (v.ke_at_reference + v.pe_at_reference));
  const Scalar c = rel(v.ke_at_reference + v.pe_at_reference / 2);
  v.local_ke_c = {"KE(r0) - C(r0)", a, tolerance, a <= tolerance};
  v.local_energy = {"E(r0) - KE(r0) - PE(r0)", b, tolerance, b <= tolerance};
  v.local_virial = {"KE(r0) + PE(r0)/2", c, tolerance, c <= tolerance};
  return v;
}

template <typename Scalar>
struct CrossingReport {
  std::vector<Scalar> candidates;
  bool unique() const { return candidates.size() == 1; }
};

/// Radii where c changes sign, by linear interpolation between adjacent
/// nodes; nodes with |psi|^2 below density_threshold are ignored.
template <typename Scalar>
CrossingReport<Scalar> crossing_radius(const EnergyDensities<Scalar>& d, Scalar density_threshold = Scalar(1e-12)) {
  CrossingReport<Scalar> out;
  const Index n = d.grid.size();
  for (Index i = 0; i + 1 < n; ++i) {
    if (!(d.psi2[i] > density_threshold && d.psi2[i + 1] > density_threshold)) continue;
    const Scalar a = d.c[i], b = d.c[i + 1];
    if (a == 0 && (i == 0 || d.c[i - 1] * b < 0)) {
      out.candidates.push_back(d.grid[i]);
    } else if (a * b < 0) {
      out.candidates.push_back(d.grid[i] + d.grid.spacing() * a / (a - b));
    }
  }
  return out;
}

}  // namespace wavelab
