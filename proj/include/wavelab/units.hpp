#pragma once

#include <cmath>

#include "wavelab/error.hpp"

namespace wavelab {

// Internally everything is in Hartree atomic units (hbar = m_e = e = 1), so
// the Bohr radius is 1 and the hydrogen ground level is exactly -1/2.
template <typename Scalar = double>
struct UnitSystem {
  Scalar hartree_in_ev = Scalar(27.2114);
  Scalar bohr_in_meters = Scalar(5.29177e-11);
};

namespace detail {

template <typename Scalar>
Scalar require_finite(Scalar x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite input");
  return x;
}

}  // namespace detail

template <typename Scalar>
Scalar hartree_to_ev(Scalar energy, const UnitSystem<Scalar>& units = {}) {
  return detail::require_finite(energy, "hartree_to_ev") * units.hartree_in_ev;
}

template <typename Scalar>
Scalar ev_to_hartree(Scalar energy, const UnitSystem<Scalar>& units = {}) {
  return detail::require_finite(energy, "ev_to_hartree") / units.hartree_in_ev;
}

template <typename Scalar>
Scalar bohr_to_meters(Scalar length, const UnitSystem<Scalar>& units = {}) {
  return detail::require_finite(length, "bohr_to_meters") * units.bohr_in_meters;
}

template <typename Scalar>
Scalar meters_to_bohr(Scalar length, const UnitSystem<Scalar>& units = {}) {
  return detail::require_finite(length, "meters_to_bohr") / units.bohr_in_meters;
}

}  // namespace wavelab
