#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "wavelab/error.hpp"
#include "wavelab/types.hpp"

namespace wavelab {

/// Symmetric tridiagonal matrix stored as its diagonal and one off-diagonal,
/// so it is symmetric by construction.
template <typename Scalar = double>
struct SymmetricTridiagonal {
  VecX<Scalar> diagonal;
  VecX<Scalar> off_diagonal;  // size n - 1

  Index size() const { return diagonal.size(); }

  MatX<Scalar> to_dense() const {
    const Index n = size();
    MatX<Scalar> m = MatX<Scalar>::Zero(n, n);
    m.diagonal() = diagonal;
    m.diagonal(1) = off_diagonal;
    m.diagonal(-1) = off_diagonal;
    return m;
  }

  template <typename Derived>
  VecX<Scalar> apply(const Eigen::MatrixBase<Derived>& x) const {
    const Index n = size();
    VecX<Scalar> y = diagonal.cwiseProduct(x);
    y.head(n - 1) += off_diagonal.cwiseProduct(x.tail(n - 1));
    y.tail(n - 1) += off_diagonal.cwiseProduct(x.head(n - 1));
    return y;
  }

  /// Gershgorin bounds on the spectrum.
  std::pair<Scalar, Scalar> spectrum_bounds() const {
    const Index n = size();
    Scalar lo = std::numeric_limits<Scalar>::infinity(), hi = -lo;
    for (Index i = 0; i < n; ++i) {
      Scalar radius = 0;
      if (i > 0) radius += std::abs(off_diagonal[i - 1]);
      if (i + 1 < n) radius += std::abs(off_diagonal[i]);
      lo = std::min(lo, diagonal[i] - radius);
      hi = std::max(hi, diagonal[i] + radius);
    }
    return {lo, hi};
  }
};

/// Number of eigenvalues strictly below x (Sturm sequence via LDL^T pivots).
template <typename Scalar>
Index count_below(const SymmetricTridiagonal<Scalar>& t, Scalar x) {
  const Index n = t.size();
  const Scalar guard = std::numeric_limits<Scalar>::epsilon() * std::numeric_limits<Scalar>::epsilon();
  Index count = 0;
  Scalar d = t.diagonal[0] - x;
  for (Index i = 0;; ++i) {
    if (d == Scalar(0)) d = -guard;
    if (d < 0) ++count;
    if (i + 1 == n) break;
    const Scalar b = t.off_diagonal[i];
    d = t.diagonal[i + 1] - x - b * b / d;
  }
  return count;
}

template <typename Scalar>
struct TridiagonalEigenpairs {
  VecX<Scalar> values;   // ascending
  MatX<Scalar> vectors;  // unit Euclidean norm columns
};

namespace detail {

/// Solves (T - shift) y = b with partially pivoted Gaussian elimination.
template <typename Scalar>
VecX<Scalar> shifted_solve(const SymmetricTridiagonal<Scalar>& t, Scalar shift, const VecX<Scalar>& b) {
  const Index n = t.size();
  const Scalar tiny = std::numeric_limits<Scalar>::epsilon() * std::max(Scalar(1), std::abs(shift));
  // Rows after elimination: u0 on the diagonal, u1, u2 on the two superdiagonals.
  VecX<Scalar> u0(n), u1 = VecX<Scalar>::Zero(n), u2 = VecX<Scalar>::Zero(n), rhs = b;
  Scalar d = t.diagonal[0] - shift;
  Scalar e = n > 1 ? t.off_diagonal[0] : Scalar(0);
  Scalar f = 0;
  for (Index i = 0; i + 1 < n; ++i) {
    const Scalar sub = t.off_diagonal[i];
    const Scalar next_d = t.diagonal[i + 1] - shift;
    const Scalar next_e = i + 2 < n ? t.off_diagonal[i + 1] : Scalar(0);
    if (std::abs(sub) > std::abs(d)) {
      // Swap rows i and i+1.
      u0[i] = sub;
      u1[i] = next_d;
      u2[i] = next_e;
      const Scalar m = d / sub;
      std::swap(rhs[i], rhs[i + 1]);
      rhs[i + 1] -= m * rhs[i];
      d = e - m * next_d;
      e = f - m * next_e;
      f = 0;
    } else {
      if (d == Scalar(0)) d = tiny;
      u0[i] = d;
      u1[i] = e;
      u2[i] = f;
      const Scalar m = sub / d;
      rhs[i + 1] -= m * rhs[i];
      d = next_d - m * e;
      e = next_e - m * f;
      f = 0;
    }
  }
  if (d == Scalar(0)) d = tiny;
  u0[n - 1] = d;
  VecX<Scalar> y(n);
  for (Index i = n - 1; i >= 0; --i) {
    Scalar s = rhs[i];
    if (i + 1 < n) s -= u1[i] * y[i + 1];
    if (i + 2 < n) s -= u2[i] * y[i + 2];
    y[i] = s / u0[i];
  }
  return y;
}

}  // namespace detail

/// The k lowest eigenpairs: eigenvalues by Sturm-count bisection to machine
/// precision, eigenvectors by shifted inverse iteration. Vectors of
/// eigenvalues closer than a relative 1e-10 are re-orthogonalised.
template <typename Scalar>
TridiagonalEigenpairs<Scalar> lowest_eigenpairs(const SymmetricTridiagonal<Scalar>& t, Index k) {
  const Index n = t.size();
  if (n < 1) throw PreconditionError("empty tridiagonal matrix");
  if (t.off_diagonal.size() != n - 1) throw PreconditionError("off-diagonal must have n - 1 entries");
  if (k < 1 || k > n) throw PreconditionError("number of eigenpairs must be in [1, n]");
  if (!t.diagonal.allFinite() || !t.off_diagonal.allFinite()) throw DomainError("non-finite matrix entries");

  const auto [glo, ghi] = t.spectrum_bounds();
  const Scalar scale = std::max(std::abs(glo), std::abs(ghi));
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();

  TridiagonalEigenpairs<Scalar> out{VecX<Scalar>(k), MatX<Scalar>(n, k)};
  Scalar lower = glo;
  for (Index j = 0; j < k; ++j) {
    Scalar lo = lower, hi = ghi;
    for (int iter = 0; iter < 400 && hi - lo > 2 * eps * std::max(scale, Scalar(1)) * Scalar(1e-2); ++iter) {
      const Scalar mid = lo + (hi - lo) / 2;
      if (mid <= lo || mid >= hi) break;
      if (count_below(t, mid) > j) hi = mid;
      else lo = mid;
    }
    out.values[j] = lo + (hi - lo) / 2;
    lower = lo;
  }

  for (Index j = 0; j < k; ++j) {
    const Scalar lambda = out.values[j];
    const Scalar shift = lambda + Scalar(8) * eps * std::max(scale, Scalar(1)) * (j % 2 == 0 ? 1 : -1);
    VecX<Scalar> v(n);
    for (Index i = 0; i < n; ++i) v[i] = Scalar(1) + Scalar(0.001) * Scalar((i * 7919 + j * 104729) % 1013) / Scalar(1013);
    v.normalize();
    Index cluster_start = j;
    while (cluster_start > 0 &&
           std::abs(out.values[cluster_start - 1] - lambda) <= Scalar(1e-10) * std::max(scale, Scalar(1)))
      --cluster_start;
    bool converged = false;
    for (int iter = 0; iter < 8; ++iter) {
      v = detail::shifted_solve(t, shift, v);
      for (Index c = cluster_start; c < j; ++c) v -= out.vectors.col(c).dot(v) * out.vectors.col(c);
      const Scalar nv = v.norm();
      if (!(nv > 0) || !std::isfinite(nv)) break;
      v /= nv;
      const Scalar residual = (t.apply(v) - lambda * v).norm();
      if (residual <= Scalar(1e3) * eps * std::max(scale, Scalar(1)) * std::sqrt(Scalar(n))) {
        converged = true;
        if (iter >= 1) break;
      }
    }
    if (!converged) throw SolverError("inverse iteration did not converge for eigenpair " + std::to_string(j));
    out.vectors.col(j) = v;
  }
  return out;
}

}  // namespace wavelab
