#pragma once

#include "wavelab/wavefunction.hpp"

namespace wavelab {

/// d^2/dx^2 of node samples: centered 3-point stencil inside, one-sided
/// second-order stencils on the two boundary nodes.
template <typename Derived, typename Scalar>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> second_derivative(const Eigen::MatrixBase<Derived>& f,
                                                                             const Grid<Scalar>& grid) {
  const Index n = grid.size();
  if (f.size() != n) throw PreconditionError("sample count does not match grid");
  const Scalar inv_h2 = Scalar(1) / (grid.spacing() * grid.spacing());
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> d(n);
  for (Index i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - Scalar(2) * f[i] + f[i - 1]) * inv_h2;
  if (n >= 4) {
    d[0] = (Scalar(2) * f[0] - Scalar(5) * f[1] + Scalar(4) * f[2] - f[3]) * inv_h2;
    d[n - 1] = (Scalar(2) * f[n - 1] - Scalar(5) * f[n - 2] + Scalar(4) * f[n - 3] - f[n - 4]) * inv_h2;
  } else {
    d[0] = d[1];
    d[n - 1] = d[1];
  }
  return d;
}

template <typename Scalar>
CVecX<Scalar> second_derivative(const Wavefunction<Scalar>& psi) {
  return second_derivative(psi.values(), psi.grid());
}

/// d/dx of node samples: centered difference inside, one-sided second-order at the ends.
template <typename Derived, typename Scalar>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> gradient(const Eigen::MatrixBase<Derived>& f,
                                                                    const Grid<Scalar>& grid) {
  const Index n = grid.size();
  if (f.size() != n) throw PreconditionError("sample count does not match grid");
  const Scalar inv_2h = Scalar(1) / (Scalar(2) * grid.spacing());
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> d(n);
  for (Index i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv_2h;
  d[0] = (Scalar(-3) * f[0] + Scalar(4) * f[1] - f[2]) * inv_2h;
  d[n - 1] = (Scalar(3) * f[n - 1] - Scalar(4) * f[n - 2] + f[n - 3]) * inv_2h;
  return d;
}

template <typename Scalar>
CVecX<Scalar> gradient(const Wavefunction<Scalar>& psi) {
  return gradient(psi.values(), psi.grid());
}

/// Laplacian consistent with the stationary solver's discretization.
///
/// 1D grids: second_derivative. Radial grids (s-wave): (d^2 u/dr^2) / r with
/// u = r psi, using the known u(0) = 0 as the left neighbour of the first node
/// and a one-sided stencil at r_max.
template <typename Scalar>
CVecX<Scalar> laplacian(const Wavefunction<Scalar>& psi) {
  const auto& grid = psi.grid();
  if (!grid.is_radial()) return second_derivative(psi);
  using Complex = std::complex<Scalar>;
  const CVecX<Scalar> u = psi.values().cwiseProduct(grid.nodes().template cast<Complex>());
  CVecX<Scalar> d2u = second_derivative(u, grid);
  d2u[0] = (u[1] - Scalar(2) * u[0]) / (grid.spacing() * grid.spacing());
  return d2u.cwiseQuotient(grid.nodes().template cast<Complex>());
}

/// Forward differences (psi_{i+1} - psi_i)/h on the n+1 midpoints of a
/// radial grid (the first uses the extrapolated psi(0)) or the n-1
/// midpoints of a 1D grid.
template <typename Scalar>
CVecX<Scalar> staggered_gradient(const Wavefunction<Scalar>& psi) {
  const auto& v = psi.values();
  const Index n = v.size();
  const Scalar h = psi.grid().spacing();
  if (psi.grid().is_radial()) {
    CVecX<Scalar> d(n);
    d[0] = (v[0] - extrapolate_to_origin(v)) / h;
    for (Index i = 1; i < n; ++i) d[i] = (v[i] - v[i - 1]) / h;
    return d;
  }
  return (v.tail(n - 1) - v.head(n - 1)) / h;
}

/// Quadrature weight of each staggered_gradient midpoint. Radial weights are
/// 4 pi r_i r_{i+1} h, which makes
///   sum_mid w |D+ psi|^2 == -int psi* laplacian(psi) dV
/// an exact discrete identity up to terms in the boundary value at r_max.
template <typename Scalar>
VecX<Scalar> staggered_weights(const Grid<Scalar>& grid) {
  const Index n = grid.size();
  const Scalar h = grid.spacing();
  if (!grid.is_radial()) return VecX<Scalar>::Constant(n - 1, h);
  VecX<Scalar> w(n);
  w[0] = 0;  // r_0 r_1 with r_0 = 0
  for (Index i = 1; i < n; ++i) w[i] = Scalar(4) * pi<Scalar> * grid[i - 1] * grid[i] * h;
  return w;
}

/// int |grad psi|^2 dV evaluated on the staggered grid.
template <typename Scalar>
Scalar kinetic_integral(const Wavefunction<Scalar>& psi) {
  return staggered_weights(psi.grid()).dot(staggered_gradient(psi).cwiseAbs2());
}

}  // namespace wavelab
