#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wavelab/grid.hpp"

namespace wavelab {

enum class PotentialKind { coulomb, yukawa, harmonic, tabulated };

inline const char* to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::coulomb: return "coulomb";
    case PotentialKind::yukawa: return "yukawa";
    case PotentialKind::harmonic: return "harmonic";
    case PotentialKind::tabulated: return "tabulated";
  }
  return "unknown";
}

/// Electron potential energy V(r) in hartree (negative for attraction).
///
///   coulomb    -strength / r
///   yukawa     -strength exp(-mu r) / r
///   harmonic   omega^2 r^2 / 2
///   tabulated  linear interpolation of (r, V) rows; constant beyond the ends
template <typename Scalar = double>
class Potential {
 public:
  static Potential coulomb(Scalar strength = 1) {
    Potential p(PotentialKind::coulomb);
    p.strength_ = check_finite(strength, "strength");
    return p;
  }

  static Potential yukawa(Scalar strength, Scalar mu) {
    Potential p(PotentialKind::yukawa);
    p.strength_ = check_finite(strength, "strength");
    if (!(mu >= 0) || !std::isfinite(mu)) throw DomainError("yukawa screening must be finite and >= 0");
    p.mu_ = mu;
    return p;
  }

  static Potential harmonic(Scalar omega) {
    Potential p(PotentialKind::harmonic);
    p.omega_ = check_finite(omega, "omega");
    return p;
  }

  static Potential tabulated(VecX<Scalar> r, VecX<Scalar> values) {
    if (r.size() < 2 || r.size() != values.size())
      throw PreconditionError("tabulated potential needs >= 2 rows of (r, value)");
    if (!r.allFinite() || !values.allFinite()) throw DomainError("tabulated potential has non-finite entries");
    for (Index i = 1; i < r.size(); ++i)
      if (!(r[i] > r[i - 1])) throw PreconditionError("tabulated potential radii must be strictly increasing");
    Potential p(PotentialKind::tabulated);
    p.table_r_ = std::move(r);
    p.table_v_ = std::move(values);
    return p;
  }

  /// Reads whitespace-separated "r value" rows; '#' starts a comment.
  static Potential parse_table(std::istream& in, const std::string& source = "<stream>") {
    std::vector<Scalar> rs, vs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream fields(line);
      long double r, v;
      if (!(fields >> r)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw PreconditionError(source + ":" + std::to_string(lineno) + ": expected 'r value'");
      }
      std::string extra;
      if (!(fields >> v) || (fields >> extra))
        throw PreconditionError(source + ":" + std::to_string(lineno) + ": expected exactly two columns");
      rs.push_back(Scalar(r));
      vs.push_back(Scalar(v));
    }
    return tabulated(Eigen::Map<VecX<Scalar>>(rs.data(), Index(rs.size())),
                     Eigen::Map<VecX<Scalar>>(vs.data(), Index(vs.size())));
  }

  static Potential load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open potential table " + path);
    return parse_table(in, path);
  }

  PotentialKind kind() const { return kind_; }
  Scalar strength() const { return strength_; }
  Scalar screening() const { return mu_; }
  Scalar omega() const { return omega_; }
  const VecX<Scalar>& table_radii() const { return table_r_; }
  const VecX<Scalar>& table_values() const { return table_v_; }

  bool singular_at_origin() const { return kind_ == PotentialKind::coulomb || kind_ == PotentialKind::yukawa; }

  /// lim_{r -> inf} V(r): the continuum threshold for bound states.
  Scalar asymptotic_value() const {
    switch (kind_) {
      case PotentialKind::harmonic: return std::numeric_limits<Scalar>::infinity();
      case PotentialKind::tabulated: return table_v_[table_v_.size() - 1];
      default: return Scalar(0);
    }
  }

  /// n in V ~ r^n, when the potential is a pure power law (virial exponent).
  std::optional<int> power_law_exponent() const {
    if (kind_ == PotentialKind::coulomb || (kind_ == PotentialKind::yukawa && mu_ == 0)) return -1;
    if (kind_ == PotentialKind::harmonic) return 2;
    return std::nullopt;
  }

  Scalar operator()(Scalar r) const {
    if (!std::isfinite(r)) throw DomainError("potential evaluated at non-finite r");
    switch (kind_) {
      case PotentialKind::coulomb:
        if (!(r > 0)) throw DomainError("coulomb potential needs r > 0");
        return -strength_ / r;
      case PotentialKind::yukawa:
        if (!(r > 0)) throw DomainError("yukawa potential needs r > 0");
        return -strength_ * std::exp(-mu_ * r) / r;
      case PotentialKind::harmonic:
        return omega_ * omega_ * r * r / 2;
      case PotentialKind::tabulated:
        return interpolate_table(r);
    }
    return Scalar(0);
  }

 private:
  explicit Potential(PotentialKind kind) : kind_(kind) {}

  static Scalar check_finite(Scalar x, const char* what) {
    if (!std::isfinite(x)) throw DomainError(std::string("potential ") + what + " must be finite");
    return x;
  }

  Scalar interpolate_table(Scalar r) const {
    const Index n = table_r_.size();
    if (r <= table_r_[0]) return table_v_[0];
    if (r >= table_r_[n - 1]) return table_v_[n - 1];
    const auto* begin = table_r_.data();
    const Index i = Index(std::upper_bound(begin, begin + n, r) - begin) - 1;
    const Scalar w = (r - table_r_[i]) / (table_r_[i + 1] - table_r_[i]);
    return table_v_[i] * (1 - w) + table_v_[i + 1] * w;
  }

  PotentialKind kind_;
  Scalar strength_ = 1;
  Scalar mu_ = 0;
  Scalar omega_ = 1;
  VecX<Scalar> table_r_;
  VecX<Scalar> table_v_;
};

template <typename Scalar>
Scalar evaluate(const Potential<Scalar>& pot, Scalar r) {
  return pot(r);
}

/// V at every node. Radial grids use r directly; on 1D grids central
/// potentials are evaluated at sqrt(x^2 + a^2) with softening length a, which
/// must be positive for potentials singular at the origin if a node hits x = 0.
template <typename Scalar>
VecX<Scalar> sample(const Potential<Scalar>& pot, const Grid<Scalar>& grid, Scalar softening = 0) {
  VecX<Scalar> v(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    const Scalar x = grid[i];
    const Scalar r = grid.is_radial() ? x : std::sqrt(x * x + softening * softening);
    v[i] = pot(r);
  }
  return v;
}

}  // namespace wavelab
