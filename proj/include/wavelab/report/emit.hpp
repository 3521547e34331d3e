#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wavelab/born.hpp"
#include "wavelab/energetics.hpp"
#include "wavelab/momentum.hpp"
#include "wavelab/report/config.hpp"
#include "wavelab/tdse.hpp"

namespace wavelab::report {

/// 12 significant digits, the format of every CSV number.
std::string format_number(double x);

/// Writes to a temporary sibling and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// r, psi2, KE, C, PE, E; the first row is the r = 0 extrapolation.
/// Lab units add r_m and the four fields in eV per bohr^3.
std::string energetics_csv(const EnergyDensities<double>& d, Units units);

/// p, a, a_sq_times_4pi_p2; the first row is p = 0. Lab units add k_per_m.
std::string momentum_csv(const MomentumAmplitude<double>& a, Units units);

/// theta_deg, q, f, dcs. Lab units add q_per_m and dcs_m2.
std::string scattering_csv(const std::vector<ScatteringResult<double>>& rows, Units units);

/// t, norm, KE, PE, E. Lab units add the energies in eV.
std::string ledger_csv(const std::vector<Observables<double>>& rows, Units units);

/// t, node, re, im for every stored snapshot.
std::string snapshots_csv(const PropagationRun<double>& run);

}  // namespace wavelab::report
