#include "wavelab/report/run.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "wavelab/born.hpp"
#include "wavelab/bound_states.hpp"
#include "wavelab/momentum.hpp"
#include "wavelab/report/emit.hpp"
#include "wavelab/report/verdict.hpp"
#include "wavelab/tdse.hpp"
#include "wavelab/units.hpp"
#include "wavelab/version.hpp"

namespace wavelab::report {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

json describe(const Potential<double>& pot) {
  json j{{"kind", to_string(pot.kind())}};
  switch (pot.kind()) {
    case PotentialKind::coulomb: j["strength"] = pot.strength(); break;
    case PotentialKind::yukawa:
      j["strength"] = pot.strength();
      j["mu"] = pot.screening();
      break;
    case PotentialKind::harmonic: j["omega"] = pot.omega(); break;
    case PotentialKind::tabulated: j["rows"] = pot.table_radii().size(); break;
  }
  return j;
}

json describe(const RunConfig& cfg) {
  json j{{"command", to_string(cfg.command)},
         {"potential", cfg.potential},
         {"omega", cfg.omega},
         {"r_max", cfg.r_max},
         {"n", cfg.n},
         {"l", cfg.l},
         {"states", cfg.states},
         {"state", cfg.state},
         {"p_max", cfg.p_max},
         {"p_bins", cfg.p_bins},
         {"p", cfg.p},
         {"theta_step_deg", cfg.theta_step_deg},
         {"quadrature", cfg.quadrature},
         {"box", cfg.box},
         {"nodes", cfg.nodes},
         {"x0", cfg.x0},
         {"sigma", cfg.sigma},
         {"p0", cfg.p0},
         {"softening", cfg.softening},
         {"dt", cfg.dt},
         {"steps", cfg.steps},
         {"stride", cfg.stride},
         {"absorbing", cfg.absorbing},
         {"units", to_string(cfg.units)},
         {"out", cfg.out_dir}};
  if (cfg.strength) j["strength"] = *cfg.strength;
  if (cfg.mu) j["mu"] = *cfg.mu;
  if (cfg.theta_deg) j["theta_deg"] = *cfg.theta_deg;
  if (!cfg.table.empty()) j["table"] = cfg.table;
  if (!cfg.config_path.empty()) j["config"] = cfg.config_path;
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_json(const fs::path& path, const json& j) { write_file_atomic(path, j.dump(2) + "\n"); }

void write_metadata(const RunConfig& cfg, const fs::path& dir) {
  write_json(dir / "metadata.json", {{"schema", 1},
                                     {"tool", "wavelab"},
                                     {"version", version},
                                     {"timestamp", utc_timestamp()},
                                     {"config", describe(cfg)}});
}

Grid<double> radial_grid(const RunConfig& cfg) {
  try {
    return Grid<double>::radial(cfg.r_max, cfg.n);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

json state_json(const EigenSolution<double>& s) {
  return {{"index", s.index},
          {"energy", s.energy},
          {"energy_ev", hartree_to_ev(s.energy)},
          {"node_count", s.node_count},
          {"residual_sup", s.residual_sup},
          {"method", to_string(s.method)}};
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const auto pot = make_potential(cfg);
  const auto grid = radial_grid(cfg);
  const auto states = solve_radial(pot, cfg.l, cfg.states, grid);
  const fs::path dir = cfg.out_dir;

  json list = json::array();
  for (const auto& s : states) list.push_back(state_json(s));
  write_json(dir / "solve.json", {{"schema", 1},
                                  {"command", "solve"},
                                  {"potential", describe(pot)},
                                  {"grid", {{"r_max", cfg.r_max}, {"n", cfg.n}, {"h", grid.spacing()}}},
                                  {"l", cfg.l},
                                  {"energy", states[0].energy},
                                  {"energy_ev", hartree_to_ev(states[0].energy)},
                                  {"states", list}});

  std::ostringstream csv;
  csv << "r";
  for (const auto& s : states) csv << ",psi_" << s.index;
  csv << '\n';
  for (Index i = 0; i < grid.size(); ++i) {
    csv << format_number(grid[i]);
    for (const auto& s : states) csv << ',' << format_number(s.psi[i].real());
    csv << '\n';
  }
  write_file_atomic(dir / "wavefunctions.csv", csv.str());

  for (const auto& s : states)
    out << "state " << s.index << ": E = " << format_number(s.energy) << " hartree = "
        << format_number(hartree_to_ev(s.energy)) << " eV\n";
  return exit_pass;
}

EigenSolution<double> analysed_state(const RunConfig& cfg, const Potential<double>& pot, const Grid<double>& grid) {
  auto states = solve_radial(pot, cfg.l, cfg.state + 1, grid);
  return std::move(states[static_cast<std::size_t>(cfg.state)]);
}

int cmd_energetics(const RunConfig& cfg, std::ostream& out) {
  if (cfg.l != 0) throw ConfigError("energy fields are computed for s-states (--l 0) only");
  const auto pot = make_potential(cfg);
  const auto grid = radial_grid(cfg);
  const auto state = analysed_state(cfg, pot, grid);
  const auto d = energy_densities(state.psi, pot);
  const fs::path dir = cfg.out_dir;
  write_file_atomic(dir / "energetics.csv", energetics_csv(d, cfg.units));

  const auto crossing = crossing_radius(d);
  json j{{"schema", 1},
         {"command", "energetics"},
         {"potential", describe(pot)},
         {"state", state_json(state)},
         {"totals",
          {{"KE", d.totals.kinetic}, {"C", d.totals.balancing}, {"PE", d.totals.potential}, {"E", d.totals.energy}}},
         {"surface_term_mismatch", d.surface_term_mismatch()},
         {"surface_term_vanishes", d.surface_term_vanishes},
         {"max_abs_ke_minus_c", (d.ke - d.c).cwiseAbs().maxCoeff()},
         {"crossing_radii", crossing.candidates}};
  if (const auto n = pot.power_law_exponent()) {
    const auto v = virial_report(d, *n);
    auto check = [](const Check<double>& c) {
      return json{{"name", c.name}, {"deviation", c.deviation}, {"tol", c.tolerance}, {"pass", c.pass}};
    };
    j["virial"] = {{"exponent", *n},
                   {"reference_radius", v.reference_radius},
                   {"global", check(v.global)},
                   {"local", json::array({check(v.local_ke_c), check(v.local_energy), check(v.local_virial)})}};
  }
  write_json(dir / "energetics.json", j);
  out << "KE = " << format_number(d.totals.kinetic) << ", C = " << format_number(d.totals.balancing)
      << ", PE = " << format_number(d.totals.potential) << ", E = " << format_number(d.totals.energy) << '\n';
  for (double r : crossing.candidates) out << "C changes sign at r = " << format_number(r) << '\n';
  return exit_pass;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  if (cfg.l != 0) throw ConfigError("the momentum transform handles s-states (--l 0) only");
  const auto pot = make_potential(cfg);
  const auto grid = radial_grid(cfg);
  const auto state = analysed_state(cfg, pot, grid);
  const auto a = decompose(state.psi, MomentumOptions{cfg.p_max, cfg.p_bins});
  const fs::path dir = cfg.out_dir;
  write_file_atomic(dir / "momentum.csv", momentum_csv(a, cfg.units));

  json j{{"schema", 1},
         {"command", "decompose"},
         {"potential", describe(pot)},
         {"state", state_json(state)},
         {"p_max", cfg.p_max},
         {"bins", cfg.p_bins},
         {"a_at_zero", a.at_zero.real()},
         {"parseval_norm", parseval_norm(a)},
         {"truncation_ratio", a.truncation_ratio()},
         {"truncated", a.truncated()}};
  if (pot.kind() == PotentialKind::coulomb && pot.strength() == 1.0 && cfg.state == 0) {
    double worst = std::abs(a.at_zero.real() - hydrogen_amplitude_closed_form(0.0));
    for (Index k = 0; k < a.p_grid.size(); ++k)
      worst = std::max(worst, std::abs(a.values[k].real() - hydrogen_amplitude_closed_form(a.p_grid[k])));
    j["max_abs_deviation_from_closed_form"] = worst;
  }
  write_json(dir / "momentum.json", j);
  out << "a(0) = " << format_number(a.at_zero.real()) << ", Parseval norm = " << format_number(parseval_norm(a)) << '\n';
  if (a.truncated())
    out << "warning: |a(p_max)| is " << format_number(a.truncation_ratio()) << " of the peak; raise --p-max\n";
  return exit_pass;
}

int cmd_scatter(const RunConfig& cfg, std::ostream& out) {
  const auto pot = make_potential(cfg);
  std::vector<double> angles;
  if (cfg.theta_deg) {
    angles.push_back(*cfg.theta_deg);
  } else {
    const long count = std::lround(180.0 / cfg.theta_step_deg);
    for (long k = 1; k <= count; ++k) angles.push_back(std::min(180.0, k * cfg.theta_step_deg));
  }
  std::vector<ScatteringResult<double>> rows;
  try {
    for (double deg : angles)
      rows.push_back(born_amplitude(pot, cfg.p, deg * pi<double> / 180.0,
                                    cfg.quadrature ? BornPath::quadrature : BornPath::automatic));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const fs::path dir = cfg.out_dir;
  write_file_atomic(dir / "scattering.csv", scattering_csv(rows, cfg.units));
  write_json(dir / "scattering.json", {{"schema", 1},
                                       {"command", "scatter"},
                                       {"potential", describe(pot)},
                                       {"p", cfg.p},
                                       {"method", to_string(rows.front().method)},
                                       {"rows", rows.size()}});
  for (const auto& r : rows)
    out << "theta = " << format_number(r.transfer.theta * 180.0 / pi<double>) << " deg: f = "
        << format_number(r.amplitude) << ", dcs = " << format_number(r.dcs) << '\n';
  return exit_pass;
}

int cmd_propagate(const RunConfig& cfg, std::ostream& out) {
  const auto pot = make_potential(cfg);
  Grid<double> grid = [&] {
    try {
      return Grid<double>::periodic(-cfg.box / 2, cfg.box, cfg.nodes);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }();
  PropagationOptions<double> opt;
  opt.dt = cfg.dt;
  opt.steps = cfg.steps;
  opt.snapshot_stride = cfg.stride;
  opt.absorbing = cfg.absorbing;
  opt.softening = cfg.softening;
  const auto run = propagate(gaussian_packet(grid, cfg.x0, cfg.sigma, cfg.p0), pot, opt);
  const auto ledger = scattering_energy_audit(run);
  const fs::path dir = cfg.out_dir;
  write_file_atomic(dir / "ledger.csv", ledger_csv(ledger.rows, cfg.units));
  write_file_atomic(dir / "snapshots.csv", snapshots_csv(run));
  write_json(dir / "propagate.json", {{"schema", 1},
                                      {"command", "propagate"},
                                      {"potential", describe(pot)},
                                      {"initial_energy", ledger.initial_energy},
                                      {"max_relative_energy_drift", ledger.max_relative_drift},
                                      {"potential_start", ledger.potential_start},
                                      {"potential_end", ledger.potential_end},
                                      {"kinetic_recovery", ledger.kinetic_recovery},
                                      {"min_kinetic", ledger.min_kinetic},
                                      {"max_norm_deviation", ledger.max_norm_deviation},
                                      {"stability_warning", run.stability_warning}});
  out << "E_in = " << format_number(ledger.initial_energy)
      << ", max relative drift = " << format_number(ledger.max_relative_drift) << '\n';
  if (run.stability_warning) out << "warning: dt * max|V| >= 0.5; splitting error may dominate\n";
  return exit_pass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerdictReport report;
  try {
    report = run_verification(cfg);
  } catch (const std::exception& e) {
    // Keep the verdict file even when a computation aborts.
    report.checks.push_back({0, std::string("verification aborted: ") + e.what(), "", 0, 0, 0, Relation::within, false});
  }
  write_json(fs::path(cfg.out_dir) / "verdict.json", to_json(report));
  for (const auto& c : report.checks)
    out << (c.pass ? "PASS " : "FAIL ") << "[" << c.criterion << "] " << c.name << ": " << format_number(c.computed)
        << '\n';
  out << (report.pass() ? "all checks passed\n" : "some checks failed\n");
  return report.pass() ? exit_pass : exit_check_failure;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    int code = exit_pass;
    switch (cfg.command) {
      case Command::solve: code = cmd_solve(cfg, out); break;
      case Command::energetics: code = cmd_energetics(cfg, out); break;
      case Command::decompose: code = cmd_decompose(cfg, out); break;
      case Command::scatter: code = cmd_scatter(cfg, out); break;
      case Command::propagate: code = cmd_propagate(cfg, out); break;
      case Command::verify: code = cmd_verify(cfg, out); break;
    }
    write_metadata(cfg, cfg.out_dir);
    return code;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_check_failure;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto parsed = parse_arguments(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? out : err) << parsed.message;
    return parsed.exit_code;
  }
  return run(*parsed.config, out, err);
}

}  // namespace wavelab::report
