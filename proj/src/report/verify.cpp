#include "wavelab/report/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "wavelab/born.hpp"
#include "wavelab/bound_states.hpp"
#include "wavelab/momentum.hpp"
#include "wavelab/tdse.hpp"
#include "wavelab/units.hpp"
#include "wavelab/version.hpp"

namespace wavelab::report {

bool VerdictReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
}

bool VerdictReport::criterion_pass(int criterion) const {
  bool any = false;
  for (const auto& c : checks) {
    if (c.criterion != criterion) continue;
    any = true;
    if (!c.pass) return false;
  }
  return any;
}

const char* criterion_title(int criterion) {
  switch (criterion) {
    case 1: return "ground-state energy";
    case 2: return "ground-state eigenfunction shape";
    case 3: return "momentum amplitude and Parseval";
    case 4: return "pointwise energy fields and C crossing";
    case 5: return "energy totals and virial relations";
    case 6: return "KE density differs from C, totals agree";
    case 7: return "stationary-equation residual";
    case 8: return "propagator to Coulomb potential, Born amplitudes";
    case 9: return "time propagation: norm, phase, energy ledger";
    case 10: return "Numerov agreement and second-order convergence";
  }
  return "?";
}

namespace {

using Pot = Potential<double>;

// Pinned verification settings; only the radial grid is configurable.
constexpr double shape_r_max = 20.0;
constexpr double field_r_lo = 0.1, field_r_hi = 10.0;
constexpr Index refined_n = 8000;
const std::vector<double> propagator_mus{0.08, 0.04, 0.02, 0.01};
const std::vector<double> rutherford_mus{0.2, 0.1, 0.05};
constexpr double line_length = 25.6;
constexpr Index line_nodes = 1024;
constexpr Index steps_per_period = 2000;
constexpr Index unitarity_steps = 10000;

class Recorder {
 public:
  Recorder(VerdictReport& r, int criterion) : r_(r), criterion_(criterion) {}

  void within(std::string name, std::string anchor, double expected, double computed, double tol) {
    const bool ok = std::isfinite(computed) && std::abs(computed - expected) <= tol;
    add(std::move(name), std::move(anchor), expected, computed, tol, Relation::within, ok);
  }
  void below(std::string name, std::string anchor, double computed, double limit) {
    add(std::move(name), std::move(anchor), 0.0, computed, limit, Relation::below, std::isfinite(computed) && computed < limit);
  }
  void above(std::string name, std::string anchor, double computed, double limit) {
    add(std::move(name), std::move(anchor), limit, computed, limit, Relation::above, std::isfinite(computed) && computed > limit);
  }

 private:
  void add(std::string name, std::string anchor, double expected, double computed, double tol, Relation rel, bool ok) {
    r_.checks.push_back({criterion_, std::move(name), std::move(anchor), expected, computed, tol, rel, ok});
  }
  VerdictReport& r_;
  int criterion_;
};

double phase_error(const Wavefunction<double>& psi0, const CVecX<double>& psi_t, double expected_phase) {
  const double h = psi0.grid().spacing();
  const std::complex<double> overlap = (psi0.values().conjugate().array() * psi_t.array()).sum() * h;
  return std::abs(std::remainder(std::arg(overlap) - expected_phase, 2 * pi<double>));
}

double max_over(const Grid<double>& g, double lo, double hi, auto&& f) {
  double worst = 0;
  for (Index i = 0; i < g.size(); ++i)
    if (g[i] >= lo && g[i] <= hi) worst = std::max(worst, f(i));
  return worst;
}

}  // namespace

VerdictReport run_verification(const RunConfig& cfg) {
  VerdictReport report;
  const auto grid = Grid<double>::radial(cfg.r_max, cfg.n);
  const auto coulomb = Pot::coulomb();
  const auto states = solve_radial(coulomb, 0, 2, grid);
  const auto& ground = states[0];
  const VecX<double> psi = ground.psi.values().real();

  {
    Recorder c(report, 1);
    c.within("ground energy (hartree)", "hydrogen ground level", -0.5, ground.energy, 1e-4);
    c.within("ground energy (eV)", "hydrogen ground level in eV", -13.6, hartree_to_ev(ground.energy), 0.01);
  }
  {
    Recorder c(report, 2);
    const double norm = 1 / std::sqrt(pi<double>);
    c.below("max |psi - exp(-r)/sqrt(pi)| on [h, 20]", "normalized 1s eigenfunction",
            max_over(grid, grid[0], shape_r_max, [&](Index i) { return std::abs(psi[i] - norm * std::exp(-grid[i])); }),
            1e-4);
  }
  {
    Recorder c(report, 3);
    MomentumOptions mo{cfg.p_max, cfg.p_bins};
    const auto amp = decompose(ground.psi, mo);
    double worst = std::abs(amp.at_zero - hydrogen_amplitude_closed_form(0.0));
    worst = std::max(worst, max_over(amp.p_grid, 0.0, 10.0, [&](Index j) {
      return std::abs(amp.values[j] - hydrogen_amplitude_closed_form(amp.p_grid[j]));
    }));
    c.below("max |a(p) - closed form| on [0, 10]", "hydrogen 1s momentum amplitude", worst, 1e-3);
    c.within("Parseval norm", "plane-wave decomposition is unitary", 1.0, parseval_norm(amp), 1e-4);
  }

  const auto dens = energy_densities(ground.psi, coulomb);
  {
    Recorder c(report, 4);
    const double ke_dev = max_over(grid, field_r_lo, field_r_hi, [&](Index i) {
      return std::abs(dens.ke[i] - 0.5 * dens.psi2[i]) / dens.psi2[i];
    });
    const double c_dev = max_over(grid, field_r_lo, field_r_hi, [&](Index i) {
      return std::abs(dens.c[i] - (1 / grid[i] - 0.5) * dens.psi2[i]) / dens.psi2[i];
    });
    c.below("max |KE(r) - |psi|^2/2| / |psi|^2 on [0.1, 10]", "kinetic density of the 1s state", ke_dev, 1e-4);
    c.below("max |C(r) - (1/r - 1/2)|psi|^2| / |psi|^2 on [0.1, 10]", "balancing term of the 1s state", c_dev, 1e-4);
    const auto crossing = crossing_radius(dens);
    c.within("number of C sign changes", "C changes sign once", 1.0, double(crossing.candidates.size()), 0.0);
    c.within("C crossing radius", "C vanishes at twice the Bohr radius", 2.0,
             crossing.unique() ? crossing.candidates.front() : std::numeric_limits<double>::quiet_NaN(), 1e-3);
  }
  {
    Recorder c(report, 5);
    c.within("KE_total", "kinetic energy of the 1s state", 0.5, dens.totals.kinetic, 1e-4);
    c.within("PE_total", "potential energy of the 1s state", -1.0, dens.totals.potential, 1e-4);
    c.within("E_total", "total energy of the 1s state", -0.5, dens.totals.energy, 1e-4);
    const auto v = virial_report(dens, *coulomb.power_law_exponent(), 1.0, 1e-4);
    c.below("|2 KE_total + PE_total|", "virial theorem for 1/r", v.global.deviation, v.global.tolerance);
    c.below("|KE(r0) - C(r0)| / KE(r0)", "local virial at the Bohr radius", v.local_ke_c.deviation, 1e-4);
    c.below("|E(r0) - KE(r0) - PE(r0)| / KE(r0)", "local energy relation at the Bohr radius", v.local_energy.deviation, 1e-4);
    c.below("|KE(r0) + PE(r0)/2| / KE(r0)", "local virial at the Bohr radius", v.local_virial.deviation, 1e-4);
  }
  {
    Recorder c(report, 6);
    c.above("max |KE(r) - C(r)|", "KE and C differ pointwise", (dens.ke - dens.c).cwiseAbs().maxCoeff(), 0.01);
    c.below("|KE_total - C_total| / KE_total", "KE and C differ by a vanishing surface term",
            dens.surface_term_mismatch(), 1e-6);
  }
  {
    Recorder c(report, 7);
    const double peak = psi.cwiseAbs().maxCoeff();
    c.below("residual sup / (|E| max|psi|)", "stationary equation holds pointwise",
            ground.residual_sup / (std::abs(ground.energy) * peak), 1e-4);
    const double wrong = -0.4;
    const auto res = residual(ground.psi, coulomb, wrong);
    const CVecX<double> expected = (wrong - (-0.5)) * ground.psi.values();
    c.below("max |n(E=-0.4) - (E - E0) psi| / max |(E - E0) psi|", "residual of a wrong energy",
            (res.values - expected).cwiseAbs().maxCoeff() / expected.cwiseAbs().maxCoeff(), 1e-3);
  }
  {
    Recorder c(report, 8);
    const VecX<double> radii = VecX<double>::LinSpaced(96, 0.5, 10.0);
    const auto pp = potential_from_propagator<double>(propagator_mus, radii);
    c.within("propagator quadratures converged", "screened propagator transforms", 1.0, pp.all_converged() ? 1.0 : 0.0, 0.0);
    c.below("max |V_0(r) + 1/r| / (1/r) on [0.5, 10]", "photon exchange gives the Coulomb potential",
            pp.max_relative_deviation, 1e-3);
    const auto yukawa = Pot::yukawa(1.0, 1.0);
    double worst = 0;
    for (int k = 0; k <= 44; ++k) {
      const double theta = pi<double> / 12 + k * (pi<double> - pi<double> / 12) / 44;
      const auto a = born_amplitude(yukawa, 1.0, theta);
      const auto b = born_amplitude(yukawa, 1.0, theta, BornPath::quadrature);
      worst = std::max(worst, std::abs(a.amplitude - b.amplitude) / std::abs(a.amplitude));
    }
    c.below("max relative |f_quadrature - f_closed| for theta in [pi/12, pi]", "first Born amplitude of Yukawa", worst, 1e-5);
    const auto limit = screened_coulomb_limit<double>(1.0, pi<double> / 2, rutherford_mus);
    c.within("dcs at p = 1, theta = pi/2, mu -> 0", "Rutherford cross-section", 1.0, limit.value, 1e-2);
  }
  {
    Recorder c(report, 9);
    const auto line = Grid<double>::periodic(-line_length / 2, line_length, line_nodes);
    const auto oscillator = Pot::harmonic(1.0);
    const auto eigen = solve_line(oscillator, 1, line);
    const double period = 2 * pi<double>;

    PropagationOptions<double> long_run;
    long_run.dt = period / double(steps_per_period);
    long_run.steps = unitarity_steps;
    long_run.snapshot_stride = 100;
    const auto unitary = propagate(eigen[0].psi, oscillator, long_run);
    double drift = 0;
    for (const auto& o : unitary.observables) drift = std::max(drift, std::abs(o.norm - unitary.observables[0].norm));
    c.below("norm drift over 1e4 steps", "unitary time evolution", drift, 1e-8);

    PropagationOptions<double> one_period = long_run;
    one_period.steps = steps_per_period;
    const auto cycle = propagate(eigen[0].psi, oscillator, one_period);
    c.below("eigenstate phase error over one period (rad)", "stationary states evolve by a phase",
            phase_error(eigen[0].psi, cycle.final_state, std::remainder(-eigen[0].energy * period, 2 * pi<double>)), 1e-3);

    RunConfig audit_cfg;
    audit_cfg.command = Command::propagate;
    const auto audit_grid = Grid<double>::periodic(-audit_cfg.box / 2, audit_cfg.box, audit_cfg.nodes);
    PropagationOptions<double> ao;
    ao.dt = audit_cfg.dt;
    ao.steps = audit_cfg.steps;
    ao.snapshot_stride = audit_cfg.stride;
    ao.absorbing = true;
    ao.softening = audit_cfg.softening;
    const auto run = propagate(gaussian_packet(audit_grid, audit_cfg.x0, audit_cfg.sigma, audit_cfg.p0),
                               make_potential(audit_cfg), ao);
    const auto ledger = scattering_energy_audit(run);
    c.below("max |E_total(t) - E_in| / |E_in|", "incoming energy is conserved", ledger.max_relative_drift, 1e-5);
    c.below("|PE_total| at start and end", "packet starts and ends free",
            std::max(std::abs(ledger.potential_start), std::abs(ledger.potential_end)), 1e-6);
    c.below("|KE_end - KE_start| / KE_start", "kinetic energy recovered after the barrier", ledger.kinetic_recovery, 1e-5);
  }
  {
    Recorder c(report, 10);
    const auto refined = solve_radial(coulomb, 0, 2, Grid<double>::radial(cfg.r_max, refined_n));
    const auto n1 = numerov_eigenvalue(coulomb, -0.6, -0.4, grid);
    const auto n2 = numerov_eigenvalue(coulomb, -0.14, -0.11, grid);
    c.below("|E1 dense - E1 Numerov|", "independent eigenvalue methods agree", std::abs(refined[0].energy - n1.energy), 1e-5);
    c.below("|E2 dense - E2 Numerov|", "independent eigenvalue methods agree", std::abs(refined[1].energy - n2.energy), 1e-5);

    std::vector<double> err;
    for (Index n : {Index(1000), Index(2000), Index(4000)})
      err.push_back(std::abs(solve_radial(coulomb, 0, 1, Grid<double>::radial(40.0, n))[0].energy + 0.5));
    c.within("eigensolver error ratio n = 1000 / 2000", "second-order eigensolver", 4.0, err[0] / err[1], 0.5);
    c.within("eigensolver error ratio n = 2000 / 4000", "second-order eigensolver", 4.0, err[1] / err[2], 0.5);

    const auto line = Grid<double>::periodic(-line_length / 2, line_length, line_nodes);
    const auto gauss = Wavefunction<double>::sample(
        line, [](double x) { return std::pow(pi<double>, -0.25) * std::exp(-x * x / 2); }, Normalization::unit_l2);
    std::vector<double> perr;
    for (Index steps : {Index(100), Index(200), Index(400)}) {
      PropagationOptions<double> o;
      o.steps = steps;
      o.dt = 2 * pi<double> / double(steps);
      const auto r = propagate(gauss, Pot::harmonic(1.0), o);
      perr.push_back(phase_error(gauss, r.final_state, std::remainder(-0.5 * 2 * pi<double>, 2 * pi<double>)));
    }
    c.within("propagator phase error ratio dt / (dt/2)", "second-order Strang splitting", 4.0, perr[0] / perr[1], 0.5);
    c.within("propagator phase error ratio dt/2 / (dt/4)", "second-order Strang splitting", 4.0, perr[1] / perr[2], 0.5);
  }

  report.environment = {
      {"version", std::string(version)},
      {"radial_grid", {{"r_max", cfg.r_max}, {"n", cfg.n}, {"refined_n", refined_n}}},
      {"momentum_grid", {{"p_max", cfg.p_max}, {"bins", cfg.p_bins}}},
      {"mu_sequence", propagator_mus},
      {"rutherford_mu_sequence", rutherford_mus},
      {"line", {{"length", line_length}, {"nodes", line_nodes}, {"steps_per_period", steps_per_period}}},
  };
  return report;
}

nlohmann::json to_json(const VerdictReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    const char* rel = c.relation == Relation::within ? "within" : c.relation == Relation::below ? "below" : "above";
    auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
    checks.push_back({{"criterion", c.criterion},
                      {"name", c.name},
                      {"anchor", c.anchor},
                      {"expected", num(c.expected)},
                      {"computed", num(c.computed)},
                      {"tol", num(c.tolerance)},
                      {"relation", rel},
                      {"pass", c.pass}});
  }
  return {{"schema", 1}, {"checks", checks}, {"pass", report.pass()}, {"environment", report.environment}};
}

}  // namespace wavelab::report
