#pragma once

#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "wavelab/potential.hpp"
#include "wavelab/wavefunction.hpp"

namespace wavelab {

template <typename Scalar = double>
struct PropagationOptions {
  Scalar dt = Scalar(0.01);
  Index steps = 0;
  Index snapshot_stride = 0;  // 0 keeps only the first and last state
  bool absorbing = false;     // cos^2 mask over the outer 10% of each side
  Scalar boundary_threshold = Scalar(1e-4);
  Scalar softening = 0;       // soft-core distance for central potentials on the line
};

template <typename Scalar = double>
struct Observables {
  Scalar t{};
  Scalar norm{};
  Scalar kinetic{};
  Scalar potential{};
  Scalar energy{};
  Scalar mean_x{};
  Scalar mean_x2{};
  Scalar mean_p{};
};

template <typename Scalar = double>
struct Snapshot {
  Index step = 0;
  Scalar t{};
  CVecX<Scalar> values;
};

template <typename Scalar = double>
struct PropagationRun {
  Grid<Scalar> grid;
  VecX<Scalar> potential;
  PropagationOptions<Scalar> options;
  CVecX<Scalar> initial;
  CVecX<Scalar> final_state;
  std::vector<Snapshot<Scalar>> snapshots;
  std::vector<Observables<Scalar>> observables;  // one per snapshot
  bool stability_warning = false;                // dt max|V| >= 0.5

  Wavefunction<Scalar> final_wavefunction() const { return Wavefunction<Scalar>(grid, final_state); }
};

namespace detail {

template <typename Scalar>
VecX<Scalar> angular_wavenumbers(const Grid<Scalar>& grid) {
  const Index n = grid.size();
  const Scalar dk = Scalar(2) * pi<Scalar> / (Scalar(n) * grid.spacing());
  VecX<Scalar> k(n);
  for (Index i = 0; i < n; ++i) k[i] = dk * Scalar(i < (n + 1) / 2 ? i : i - n);
  return k;
}

template <typename Scalar>
VecX<Scalar> absorbing_mask(const Grid<Scalar>& grid) {
  const Index n = grid.size();
  const Scalar width = Scalar(0.1) * Scalar(n) * grid.spacing();
  VecX<Scalar> m = VecX<Scalar>::Ones(n);
  for (Index i = 0; i < n; ++i) {
    const Scalar d = std::min(Scalar(i), Scalar(n - 1 - i)) * grid.spacing();
    if (d < width) {
      const Scalar c = std::cos(pi<Scalar> / 2 * (width - d) / width);
      m[i] = c * c;
    }
  }
  return m;
}

}  // namespace detail

/// Norm, energy and moments of psi on a periodic line; sums use the uniform
/// node weight h and the kinetic energy is evaluated spectrally.
template <typename Scalar>
Observables<Scalar> observe(const CVecX<Scalar>& psi, const Grid<Scalar>& grid, const VecX<Scalar>& potential,
                            Scalar t = 0) {
  const Index n = grid.size();
  const Scalar h = grid.spacing();
  Eigen::FFT<Scalar> fft;
  CVecX<Scalar> hat(n);
  fft.fwd(hat.data(), psi.data(), n);
  const VecX<Scalar> k = detail::angular_wavenumbers(grid);
  const VecX<Scalar> rho = psi.cwiseAbs2();
  const VecX<Scalar> rho_k = hat.cwiseAbs2();
  Observables<Scalar> o;
  o.t = t;
  o.norm = rho.sum() * h;
  o.kinetic = k.array().square().matrix().dot(rho_k) * h / Scalar(2 * n);
  o.potential = potential.dot(rho) * h;
  o.energy = o.kinetic + o.potential;
  o.mean_x = grid.nodes().dot(rho) * h / o.norm;
  o.mean_x2 = grid.nodes().array().square().matrix().dot(rho) * h / o.norm;
  o.mean_p = k.dot(rho_k) * h / Scalar(n) / o.norm;
  return o;
}

/// Strang-split evolution exp(-iV dt/2) exp(-iT dt) exp(-iV dt/2) on the
/// periodic line spanned by a uniform grid, with the kinetic factor applied
/// in Fourier space. Throws BoundaryContaminationError when |psi| at either
/// end node exceeds options.boundary_threshold.
template <typename Scalar>
PropagationRun<Scalar> propagate(const Wavefunction<Scalar>& psi0, const VecX<Scalar>& potential,
                                 const PropagationOptions<Scalar>& opt) {
  using Complex = std::complex<Scalar>;
  const auto& grid = psi0.grid();
  if (grid.is_radial()) throw PreconditionError("time propagation needs a uniform 1D grid");
  if (potential.size() != grid.size()) throw PreconditionError("potential samples do not match grid");
  if (!potential.allFinite()) throw DomainError("potential is not finite on the grid");
  if (opt.steps < 0) throw PreconditionError("step count must be nonnegative");
  if (!std::isfinite(opt.dt) || opt.dt == 0) throw DomainError("time step must be finite and nonzero");
  const Index n = grid.size();

  PropagationRun<Scalar> run{grid, potential, opt, psi0.values(), psi0.values(), {}, {}, false};
  run.stability_warning = std::abs(opt.dt) * potential.cwiseAbs().maxCoeff() >= Scalar(0.5);

  auto edge = [n](const CVecX<Scalar>& v) { return std::max(std::abs(v[0]), std::abs(v[n - 1])); };
  if (edge(run.final_state) > opt.boundary_threshold) throw BoundaryContaminationError(0, edge(run.final_state));

  auto record = [&](Index step, const CVecX<Scalar>& v) {
    const Scalar t = Scalar(step) * opt.dt;
    run.snapshots.push_back({step, t, v});
    run.observables.push_back(observe(v, grid, potential, t));
  };
  record(0, run.final_state);
  if (opt.steps == 0) return run;

  const CVecX<Scalar> half_v =
      (potential.array() * (-opt.dt / 2)).unaryExpr([](Scalar a) { return std::polar(Scalar(1), a); }).matrix();
  const VecX<Scalar> k = detail::angular_wavenumbers(grid);
  const CVecX<Scalar> kinetic =
      (k.array().square() * (-opt.dt / 2)).unaryExpr([](Scalar a) { return std::polar(Scalar(1), a); }).matrix();
  const VecX<Scalar> mask = opt.absorbing ? detail::absorbing_mask(grid) : VecX<Scalar>::Ones(n);

  Eigen::FFT<Scalar> fft;
  CVecX<Scalar> psi = run.final_state, hat(n);
  for (Index step = 1; step <= opt.steps; ++step) {
    psi = psi.cwiseProduct(half_v);
    fft.fwd(hat.data(), psi.data(), n);
    hat = hat.cwiseProduct(kinetic);
    fft.inv(psi.data(), hat.data(), n);
    psi = psi.cwiseProduct(half_v);
    if (opt.absorbing) psi = psi.cwiseProduct(mask.template cast<Complex>());
    const Scalar b = edge(psi);
    if (b > opt.boundary_threshold) throw BoundaryContaminationError(step, b);
    if (step == opt.steps || (opt.snapshot_stride > 0 && step % opt.snapshot_stride == 0)) record(step, psi);
  }
  run.final_state = psi;
  return run;
}

template <typename Scalar>
PropagationRun<Scalar> propagate(const Wavefunction<Scalar>& psi0, const Potential<Scalar>& pot,
                                 const PropagationOptions<Scalar>& opt) {
  return propagate(psi0, sample(pot, psi0.grid(), opt.softening), opt);
}

/// exp(-(x - x0)^2 / (4 sigma^2) + i p0 x) normalized so the position spread is sigma.
template <typename Scalar>
Wavefunction<Scalar> gaussian_packet(const Grid<Scalar>& grid, Scalar x0, Scalar sigma, Scalar p0) {
  if (!(sigma > 0)) throw DomainError("packet width must be positive");
  const Scalar c = std::pow(Scalar(2) * pi<Scalar> * sigma * sigma, Scalar(-0.25));
  return Wavefunction<Scalar>::sample(
      grid,
      [=](Scalar x) {
        const Scalar d = x - x0;
        return c * std::exp(-d * d / (4 * sigma * sigma)) * std::polar(Scalar(1), p0 * x);
      },
      Normalization::unit_l2);
}

template <typename Scalar = double>
struct EnergyLedger {
  std::vector<Observables<Scalar>> rows;
  Scalar initial_energy{};
  Scalar max_relative_drift{};
  Scalar potential_start{}, potential_end{};
  Scalar kinetic_recovery{};  // |KE_end - KE_start| / KE_start
  Scalar max_norm_deviation{};
  Scalar min_kinetic{};       // smallest KE seen: shows the exchange with PE during traversal

  bool conserved(Scalar tol = Scalar(1e-5)) const { return max_relative_drift < tol; }
  bool asymptotically_free(Scalar tol = Scalar(1e-6)) const {
    return std::abs(potential_start) < tol && std::abs(potential_end) < tol;
  }
};

/// Energy bookkeeping of a finished run: E_total against its initial value at every snapshot.
template <typename Scalar>
EnergyLedger<Scalar> scattering_energy_audit(const PropagationRun<Scalar>& run) {
  if (run.observables.empty()) throw PreconditionError("run has no recorded observables");
  EnergyLedger<Scalar> l;
  l.rows = run.observables;
  const auto& first = l.rows.front();
  const auto& last = l.rows.back();
  l.initial_energy = first.energy;
  const Scalar scale = std::abs(first.energy) > 0 ? std::abs(first.energy) : Scalar(1);
  l.min_kinetic = first.kinetic;
  for (const auto& o : l.rows) {
    l.max_relative_drift = std::max(l.max_relative_drift, std::abs(o.energy - first.energy) / scale);
    l.max_norm_deviation = std::max(l.max_norm_deviation, std::abs(o.norm - first.norm));
    l.min_kinetic = std::min(l.min_kinetic, o.kinetic);
  }
  l.potential_start = first.potential;
  l.potential_end = last.potential;
  l.kinetic_recovery = first.kinetic != 0 ? std::abs(last.kinetic - first.kinetic) / std::abs(first.kinetic) : Scalar(0);
  return l;
}

}  // namespace wavelab
