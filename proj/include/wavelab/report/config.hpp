#pragma once

#include <optional>
#include <string>

#include "wavelab/potential.hpp"

namespace wavelab::report {

/// Invalid or inconsistent configuration (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Command { solve, decompose, energetics, scatter, propagate, verify };
enum class Units { au, lab };

const char* to_string(Command c);
const char* to_string(Units u);

/// Everything a run needs. Unset optionals fall back to per-command defaults.
struct RunConfig {
  Command command = Command::verify;

  // Potential. "auto" means coulomb, except yukawa for scatter and the
  // repulsive barrier (strength -1, mu 1) for propagate.
  std::string potential = "auto";
  std::optional<double> strength;
  std::optional<double> mu;
  double omega = 1.0;
  std::string table;

  // Radial grid and stationary solver.
  double r_max = 40.0;
  long n = 4000;
  int l = 0;
  long states = 1;
  long state = 0;  // which solved state energetics/decompose analyse

  // Momentum grid.
  double p_max = 40.0;
  long p_bins = 4000;

  // Scattering.
  double p = 1.0;
  std::optional<double> theta_deg;  // single angle; otherwise a table in theta_step_deg steps
  double theta_step_deg = 5.0;
  bool quadrature = false;

  // Time propagation on a periodic line [-box/2, box/2).
  double box = 200.0;
  long nodes = 2048;
  double x0 = -40.0;
  double sigma = 4.0;
  double p0 = 2.0;
  double softening = 1.0;
  double dt = 0.01;
  long steps = 4000;
  long stride = 100;
  bool absorbing = false;

  Units units = Units::au;
  std::string out_dir = "out";
  std::string config_path;
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = 0;
  std::string message;  // usage or error text when config is empty
};

/// Positional command plus flags; `--config FILE` supplies key = value lines
/// using the long flag names, and flags given on the command line win.
ParseOutcome parse_arguments(int argc, const char* const* argv);

/// Resolves the potential options for the configured command.
Potential<double> make_potential(const RunConfig& cfg);

}  // namespace wavelab::report
