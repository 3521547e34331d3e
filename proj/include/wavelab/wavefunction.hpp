#pragma once

#include <cmath>
#include <utility>

#include "wavelab/grid.hpp"

namespace wavelab {

enum class Normalization { raw, unit_l2 };

/// Complex samples of psi on a grid. On radial grids the samples are psi(r)
/// of an s-wave, and norms use the 4 pi r^2 dr volume element.
template <typename Scalar = double>
class Wavefunction {
 public:
  using Complex = std::complex<Scalar>;

  Wavefunction(Grid<Scalar> grid, CVecX<Scalar> values, Normalization tag = Normalization::raw)
      : grid_(std::move(grid)), values_(std::move(values)), tag_(tag) {
    if (values_.size() != grid_.size()) throw PreconditionError("wavefunction length does not match grid");
    if (!values_.allFinite()) throw DomainError("wavefunction has non-finite samples");
  }

  template <typename Derived>
  static Wavefunction from_real(Grid<Scalar> grid, const Eigen::MatrixBase<Derived>& values,
                                Normalization tag = Normalization::raw) {
    CVecX<Scalar> c = values.template cast<Complex>();
    return Wavefunction(std::move(grid), std::move(c), tag);
  }

  /// Samples f(x) at every node.
  template <typename F>
  static Wavefunction sample(Grid<Scalar> grid, F&& f, Normalization tag = Normalization::raw) {
    CVecX<Scalar> v(grid.size());
    for (Index i = 0; i < grid.size(); ++i) v[i] = Complex(f(grid[i]));
    return Wavefunction(std::move(grid), std::move(v), tag);
  }

  const Grid<Scalar>& grid() const { return grid_; }
  const CVecX<Scalar>& values() const { return values_; }
  Normalization normalization() const { return tag_; }
  Index size() const { return values_.size(); }
  Complex operator[](Index i) const { return values_[i]; }

  VecX<Scalar> density() const { return values_.cwiseAbs2(); }

  /// Integral of |psi|^2 over the grid's volume element.
  Scalar norm_squared() const { return grid_.volume_weights().dot(density()); }

  Wavefunction normalized() const {
    const Scalar n2 = norm_squared();
    if (!(n2 > 0)) throw DomainError("cannot normalize a zero wavefunction");
    return Wavefunction(grid_, values_ / std::sqrt(n2), Normalization::unit_l2);
  }

 private:
  Grid<Scalar> grid_;
  CVecX<Scalar> values_;
  Normalization tag_;
};

/// <a|b> with the grid's volume element.
template <typename Scalar>
std::complex<Scalar> inner_product(const Wavefunction<Scalar>& a, const Wavefunction<Scalar>& b) {
  if (!(a.grid() == b.grid())) throw PreconditionError("inner product of wavefunctions on different grids");
  using Complex = std::complex<Scalar>;
  return (a.values().conjugate().array() * b.values().array() *
          a.grid().volume_weights().array().template cast<Complex>())
      .sum();
}

/// Quadratic extrapolation of node samples to r = 0 from the first three
/// nodes of a radial grid (h, 2h, 3h).
template <typename Derived>
typename Derived::Scalar extrapolate_to_origin(const Eigen::MatrixBase<Derived>& f) {
  return typename Derived::Scalar(3) * f[0] - typename Derived::Scalar(3) * f[1] + f[2];
}

}  // namespace wavelab
