#include "wavelab/report/config.hpp"

#include <map>
#include <sstream>

#include <CLI11.hpp>

namespace wavelab::report {

const char* to_string(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::decompose: return "decompose";
    case Command::energetics: return "energetics";
    case Command::scatter: return "scatter";
    case Command::propagate: return "propagate";
    case Command::verify: return "verify";
  }
  return "?";
}

const char* to_string(Units u) { return u == Units::lab ? "lab" : "au"; }

ParseOutcome parse_arguments(int argc, const char* const* argv) {
  static const std::map<std::string, Command> commands{
      {"solve", Command::solve},     {"decompose", Command::decompose}, {"energetics", Command::energetics},
      {"scatter", Command::scatter}, {"propagate", Command::propagate}, {"verify", Command::verify}};
  static const std::map<std::string, Units> units{{"au", Units::au}, {"lab", Units::lab}};

  RunConfig cfg;
  CLI::App app{"Stationary and time-dependent Schrodinger calculations for hydrogen-like problems", "wavelab"};
  app.set_config("--config", "", "key = value file using the long option names");
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::string command, unit_name = "au";
  app.add_option("command", command, "solve | decompose | energetics | scatter | propagate | verify")
      ->required()
      ->check(CLI::IsMember(commands));

  app.add_option("--potential", cfg.potential, "coulomb | yukawa | harmonic | table | auto")
      ->check(CLI::IsMember({"auto", "coulomb", "yukawa", "harmonic", "table"}))
      ->capture_default_str();
  double strength = 0, mu = 0, theta = 0;
  auto* strength_opt = app.add_option("--strength", strength, "coupling of coulomb/yukawa (attractive > 0)");
  auto* mu_opt = app.add_option("--mu", mu, "yukawa screening (1/bohr)")->check(CLI::NonNegativeNumber);
  app.add_option("--omega", cfg.omega, "harmonic frequency")->capture_default_str();
  app.add_option("--table", cfg.table, "two-column file of r and V(r) for --potential table");

  app.add_option("--r-max", cfg.r_max, "radial grid extent (bohr)")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--n", cfg.n, "radial grid nodes")->check(CLI::Range(3L, 2000000L))->capture_default_str();
  app.add_option("--l", cfg.l, "angular momentum")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--states", cfg.states, "number of states to solve")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--state", cfg.state, "state analysed by energetics/decompose")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  app.add_option("--p-max", cfg.p_max, "momentum grid extent")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--p-bins", cfg.p_bins, "momentum grid nodes")->check(CLI::Range(3L, 2000000L))->capture_default_str();

  app.add_option("--p", cfg.p, "incident momentum")->check(CLI::PositiveNumber)->capture_default_str();
  auto* theta_opt = app.add_option("--theta", theta, "single scattering angle (degrees)")->check(CLI::Range(0.0, 180.0));
  app.add_option("--theta-step", cfg.theta_step_deg, "angle step of the scattering table (degrees)")
      ->check(CLI::Range(0.01, 180.0))
      ->capture_default_str();
  app.add_flag("--quadrature", cfg.quadrature, "use the Born quadrature path for yukawa");

  app.add_option("--box", cfg.box, "periodic line length")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--nodes", cfg.nodes, "periodic line nodes")->check(CLI::Range(3L, 1L << 24))->capture_default_str();
  app.add_option("--x0", cfg.x0, "packet centre")->capture_default_str();
  app.add_option("--sigma", cfg.sigma, "packet width")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--p0", cfg.p0, "packet momentum")->capture_default_str();
  app.add_option("--softening", cfg.softening, "soft-core distance for central potentials on the line")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--dt", cfg.dt, "time step")->capture_default_str();
  app.add_option("--steps", cfg.steps, "time steps")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--stride", cfg.stride, "snapshot stride (0: first and last only)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_flag("--absorbing", cfg.absorbing, "cos^2 absorbing mask over the outer 10% of the line");

  app.add_option("--units", unit_name, "au | lab")->check(CLI::IsMember(units))->capture_default_str();
  app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();

  ParseOutcome outcome;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    outcome.message = app.help();
    outcome.exit_code = 0;
    return outcome;
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    os << "error: " << e.what() << "\n\n" << app.help();
    outcome.message = os.str();
    outcome.exit_code = 2;
    return outcome;
  }
  cfg.command = commands.at(command);
  cfg.units = units.at(unit_name);
  if (strength_opt->count() > 0) cfg.strength = strength;
  if (mu_opt->count() > 0) cfg.mu = mu;
  if (theta_opt->count() > 0) cfg.theta_deg = theta;
  if (auto* c = app.get_config_ptr(); c && c->count() > 0) cfg.config_path = c->as<std::string>();
  outcome.config = cfg;
  return outcome;
}

Potential<double> make_potential(const RunConfig& cfg) {
  std::string kind = cfg.potential;
  if (kind == "auto") {
    if (cfg.command == Command::scatter || cfg.command == Command::propagate) kind = "yukawa";
    else kind = cfg.mu ? "yukawa" : "coulomb";
  }
  try {
    if (kind == "coulomb") {
      if (cfg.mu) throw ConfigError("--mu applies to yukawa potentials only");
      return Potential<double>::coulomb(cfg.strength.value_or(1.0));
    }
    if (kind == "yukawa") {
      const bool barrier = cfg.command == Command::propagate && cfg.potential == "auto";
      return Potential<double>::yukawa(cfg.strength.value_or(barrier ? -1.0 : 1.0), cfg.mu.value_or(1.0));
    }
    if (kind == "harmonic") return Potential<double>::harmonic(cfg.omega);
    if (cfg.table.empty()) throw ConfigError("--potential table needs --table FILE");
    return Potential<double>::load_table(cfg.table);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace wavelab::report
