#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "wavelab/energetics.hpp"
#include "wavelab/potential.hpp"
#include "wavelab/tridiagonal.hpp"

namespace wavelab {

enum class SolverMethod { dense, closed_form };

inline const char* to_string(SolverMethod m) { return m == SolverMethod::dense ? "dense" : "closed-form"; }

template <typename Scalar = double>
struct EigenSolution {
  Scalar energy{};
  Wavefunction<Scalar> psi;
  Index index = 0;
  SolverMethod method = SolverMethod::dense;
  Scalar residual_sup{};
  Index node_count = 0;
  int l = 0;
};

namespace detail {

template <typename Scalar>
void require_radial(const Grid<Scalar>& grid) {
  if (!grid.is_radial()) throw PreconditionError("radial solver needs a radial grid");
}

template <typename Scalar>
VecX<Scalar> effective_potential(const Potential<Scalar>& pot, int l, const Grid<Scalar>& grid) {
  if (l < 0) throw DomainError("angular momentum must be nonnegative");
  VecX<Scalar> v = sample(pot, grid);
  const Scalar c = Scalar(l) * Scalar(l + 1) / 2;
  if (l > 0) v += (c / grid.nodes().array().square()).matrix();
  return v;
}

/// -1/2 D2 + V with Dirichlet ends on the node values.
template <typename Scalar>
SymmetricTridiagonal<Scalar> dirichlet_hamiltonian(const VecX<Scalar>& v, Scalar h) {
  const Index n = v.size();
  if (!v.allFinite()) throw DomainError("potential is not finite (bounded below) on the grid");
  const Scalar inv_h2 = Scalar(1) / (h * h);
  SymmetricTridiagonal<Scalar> t{VecX<Scalar>(n), VecX<Scalar>::Constant(n - 1, -inv_h2 / 2)};
  t.diagonal = v.array() + inv_h2;
  return t;
}

template <typename Derived>
Index count_nodes(const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  const Scalar floor = Scalar(1e-10) * u.cwiseAbs().maxCoeff();
  Index nodes = 0;
  Scalar last = 0;
  for (Index i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) <= floor) continue;
    if (last != 0 && (u[i] > 0) != (last > 0)) ++nodes;
    last = u[i];
  }
  return nodes;
}

/// Flips the sign so the first local maximum of |f| is positive.
template <typename Scalar>
void fix_phase(VecX<Scalar>& f) {
  const Index n = f.size();
  Index i = 0;
  while (i + 1 < n && std::abs(f[i + 1]) >= std::abs(f[i])) ++i;
  if (f[i] < 0) f = -f;
}

template <typename Scalar>
std::vector<EigenSolution<Scalar>> finish_states(const TridiagonalEigenpairs<Scalar>& pairs, const Grid<Scalar>& grid,
                                                 const VecX<Scalar>& v, int l) {
  std::vector<EigenSolution<Scalar>> out;
  for (Index j = 0; j < pairs.values.size(); ++j) {
    VecX<Scalar> f = pairs.vectors.col(j);
    const Index nodes = count_nodes(f);
    if (grid.is_radial()) f = f.cwiseQuotient(grid.nodes());
    fix_phase(f);
    auto psi = Wavefunction<Scalar>::from_real(grid, f).normalized();
    const Scalar e = pairs.values[j];
    const Scalar sup = residual(psi, v, e).sup_norm;
    out.push_back({e, std::move(psi), j, SolverMethod::dense, sup, nodes, l});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.energy < b.energy || (a.energy == b.energy && a.node_count < b.node_count);
  });
  for (std::size_t j = 0; j < out.size(); ++j) out[j].index = static_cast<Index>(j);
  return out;
}

}  // namespace detail

/// Tridiagonal Hamiltonian for u = r psi on a radial grid:
/// diagonal 1/h^2 + V(r) + l(l+1)/(2 r^2), off-diagonal -1/(2 h^2).
template <typename Scalar>
SymmetricTridiagonal<Scalar> radial_hamiltonian(const Potential<Scalar>& pot, int l, const Grid<Scalar>& grid) {
  detail::require_radial(grid);
  return detail::dirichlet_hamiltonian(detail::effective_potential(pot, l, grid), grid.spacing());
}

/// The k lowest bound states of the radial problem with angular momentum l.
/// Throws BoundStateCountError when fewer than k levels lie below the
/// potential's asymptotic value.
template <typename Scalar>
std::vector<EigenSolution<Scalar>> solve_radial(const Potential<Scalar>& pot, int l, Index k, const Grid<Scalar>& grid) {
  detail::require_radial(grid);
  if (k < 1) throw PreconditionError("need at least one state");
  const VecX<Scalar> v = detail::effective_potential(pot, l, grid);
  const auto t = detail::dirichlet_hamiltonian(v, grid.spacing());
  const Scalar threshold = pot.asymptotic_value();
  const Index bound = std::isinf(threshold) ? t.size() : count_below(t, threshold);
  if (bound < k) throw BoundStateCountError(k, bound);
  return detail::finish_states(lowest_eigenpairs(t, k), grid, v, l);
}

/// The k lowest states of a 1D problem with Dirichlet ends; singular central
/// potentials are softened as V(sqrt(x^2 + a^2)).
template <typename Scalar>
std::vector<EigenSolution<Scalar>> solve_line(const Potential<Scalar>& pot, Index k, const Grid<Scalar>& grid,
                                              Scalar softening = 0) {
  if (grid.is_radial()) throw PreconditionError("line solver needs a uniform 1D grid");
  if (k < 1) throw PreconditionError("need at least one state");
  const VecX<Scalar> v = sample(pot, grid, softening);
  const auto t = detail::dirichlet_hamiltonian(v, grid.spacing());
  return detail::finish_states(lowest_eigenpairs(t, k), grid, v, 0);
}

/// psi_1s(r) = exp(-r)/sqrt(pi) with E = -1/2, sampled as given (not renormalized).
template <typename Scalar>
EigenSolution<Scalar> ground_state_closed_form(const Grid<Scalar>& grid) {
  detail::require_radial(grid);
  const Scalar c = Scalar(1) / std::sqrt(pi<Scalar>);
  auto psi = Wavefunction<Scalar>::sample(grid, [c](Scalar r) { return c * std::exp(-r); }, Normalization::unit_l2);
  const Scalar e = Scalar(-0.5);
  const Scalar sup = residual(psi, sample(Potential<Scalar>::coulomb(), grid), e).sup_norm;
  return {e, std::move(psi), 0, SolverMethod::closed_form, sup, 0, 0};
}

/// Difference of outward and inward logarithmic derivatives of u at the
/// outermost classical turning point, from Numerov integration of
/// u'' = 2 (V_eff - E) u. Zero at an eigenvalue.
template <typename Scalar>
Scalar numerov_mismatch(const Potential<Scalar>& pot, Scalar energy, const Grid<Scalar>& grid, int l = 0) {
  detail::require_radial(grid);
  if (!std::isfinite(energy)) throw DomainError("trial energy must be finite");
  if (!(energy < pot.asymptotic_value())) throw DomainError("trial energy must lie below the potential's asymptote");
  const Index n = grid.size();
  const Scalar h = grid.spacing();
  const VecX<Scalar> v = detail::effective_potential(pot, l, grid);
  const VecX<Scalar> k2 = (Scalar(2) * (energy - v.array())).matrix();
  const VecX<Scalar> f = (Scalar(1) + h * h * k2.array() / Scalar(12)).matrix();

  Index m = n / 2;
  for (Index i = n - 1; i >= 0; --i) {
    if (k2[i] > 0) {
      m = i;
      break;
    }
  }
  m = std::clamp<Index>(m, 2, n - 3);

  constexpr Scalar big = Scalar(1e100);
  auto step = [&](Scalar u1, Scalar u0, Index i_next, Index i_cur, Index i_prev) {
    return ((Scalar(12) - Scalar(10) * f[i_cur]) * u1 - f[i_prev] * u0) / f[i_next];
  };

  // Series start near the origin: u = r^(l+1) (1 + a r + b r^2), with the
  // Coulomb charge Z and offset V0 read off V r = -Z + V0 r at the first nodes.
  const VecX<Scalar> vb = sample(pot, grid);
  const Scalar r1 = grid[0], r2 = grid[1];
  const Scalar v0 = (vb[1] * r2 - vb[0] * r1) / (r2 - r1);
  const Scalar z = v0 * r1 - vb[0] * r1;
  const Scalar a = -z / Scalar(l + 1);
  const Scalar b = (Scalar(2) * z * z / Scalar(l + 1) - Scalar(2) * (energy - v0)) / Scalar(4 * l + 6);
  auto series = [&](Scalar r) { return std::pow(r, Scalar(l + 1)) * (Scalar(1) + a * r + b * r * r); };

  VecX<Scalar> out(m + 2);
  out[0] = series(r1);
  out[1] = series(r2);
  for (Index i = 1; i <= m; ++i) {
    out[i + 1] = step(out[i], out[i - 1], i + 1, i, i - 1);
    if (std::abs(out[i + 1]) > big) out.head(i + 2) /= big;
  }

  VecX<Scalar> in(n);
  const Scalar kappa = std::sqrt(std::max(-k2[n - 1], Scalar(0)));
  in[n - 1] = Scalar(1);
  in[n - 2] = std::exp(kappa * h);
  for (Index i = n - 2; i >= m; --i) {
    in[i - 1] = step(in[i], in[i + 1], i - 1, i, i + 1);
    if (std::abs(in[i - 1]) > big) in.segment(i - 1, n - i + 1) /= big;
  }

  if (!out.allFinite() || !in.segment(m - 1, n - m + 1).allFinite())
    throw SolverError("Numerov integration overflowed despite rescaling");
  if (out[m] == 0 || in[m] == 0) throw SolverError("Numerov solution vanishes at the matching node");
  const Scalar d_out = (out[m + 1] - out[m - 1]) / (Scalar(2) * h * out[m]);
  const Scalar d_in = (in[m + 1] - in[m - 1]) / (Scalar(2) * h * in[m]);
  return d_out - d_in;
}

template <typename Scalar>
struct NumerovRoot {
  Scalar energy{};
  Scalar mismatch{};
  int iterations = 0;
};

/// Bisection on the sign of numerov_mismatch over [lo, hi].
template <typename Scalar>
NumerovRoot<Scalar> numerov_eigenvalue(const Potential<Scalar>& pot, Scalar lo, Scalar hi, const Grid<Scalar>& grid,
                                       int l = 0, Scalar tolerance = Scalar(1e-10)) {
  if (!(lo < hi)) throw PreconditionError("bracket must satisfy lo < hi");
  Scalar m_lo = numerov_mismatch(pot, lo, grid, l);
  const Scalar m_hi = numerov_mismatch(pot, hi, grid, l);
  if (m_lo == 0) return {lo, m_lo, 0};
  if (m_hi == 0) return {hi, m_hi, 0};
  if ((m_lo > 0) == (m_hi > 0)) throw PreconditionError("bracket does not straddle a sign change of the mismatch");
  int iter = 0;
  while (hi - lo > tolerance && iter < 200) {
    const Scalar mid = lo + (hi - lo) / 2;
    const Scalar m_mid = numerov_mismatch(pot, mid, grid, l);
    ++iter;
    if (m_mid == 0) return {mid, m_mid, iter};
    if ((m_mid > 0) == (m_lo > 0)) {
      lo = mid;
      m_lo = m_mid;
    } else {
      hi = mid;
    }
  }
  const Scalar e = lo + (hi - lo) / 2;
  const Scalar m_e = numerov_mismatch(pot, e, grid, l);
  // A sign change across a pole of the log-derivative is not an eigenvalue.
  if (std::abs(m_e) > Scalar(1e-3)) throw SolverError("bracket converged to a pole of the mismatch, not a root");
  return {e, m_e, iter};
}

}  // namespace wavelab
