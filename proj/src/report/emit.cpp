#include "wavelab/report/emit.hpp"

#include <cstdio>
#include <limits>
#include <fstream>
#include <sstream>
#include <system_error>

#include "wavelab/units.hpp"

namespace wavelab::report {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot rename " + tmp.string() + " to " + path.string());
  }
}

namespace {

// Row-building helper that appends the optional lab-unit columns.
struct Row {
  std::vector<double> v;
  void flush_to(std::ostringstream& os) const {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_number(v[i]);
    os << '\n';
  }
};

std::string join_header(const std::vector<std::string>& cols) {
  std::string s;
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
  return s + "\n";
}

}  // namespace

std::string energetics_csv(const EnergyDensities<double>& d, Units units) {
  const bool lab = units == Units::lab;
  std::vector<std::string> cols{"r", "psi2", "KE", "C", "PE", "E"};
  if (lab) cols.insert(cols.end(), {"r_m", "KE_eV_per_bohr3", "C_eV_per_bohr3", "PE_eV_per_bohr3", "E_eV_per_bohr3"});
  std::ostringstream os;
  os << join_header(cols);
  auto emit = [&](double r, double psi2, double ke, double c, double pe, double e) {
    Row row{{r, psi2, ke, c, pe, e}};
    if (lab) {
      const double h = UnitSystem<double>{}.hartree_in_ev;
      row.v.insert(row.v.end(), {bohr_to_meters(r), ke * h, c * h, pe * h, e * h});
    }
    row.flush_to(os);
  };
  if (d.origin) {
    const auto& o = *d.origin;
    emit(0.0, o.psi2, o.kinetic, o.balancing, o.potential, o.energy);
  }
  for (Index i = 0; i < d.grid.size(); ++i) emit(d.grid[i], d.psi2[i], d.ke[i], d.c[i], d.pe[i], d.e_field[i]);
  return os.str();
}

std::string momentum_csv(const MomentumAmplitude<double>& a, Units units) {
  const bool lab = units == Units::lab;
  std::vector<std::string> cols{"p", "a", "a_sq_times_4pi_p2"};
  if (lab) cols.push_back("k_per_m");
  std::ostringstream os;
  os << join_header(cols);
  const double four_pi = 4 * pi<double>;
  auto emit = [&](double p, double amp) {
    Row row{{p, amp, four_pi * p * p * amp * amp}};
    if (lab) row.v.push_back(p / UnitSystem<double>{}.bohr_in_meters);
    row.flush_to(os);
  };
  emit(0.0, a.at_zero.real());
  for (Index j = 0; j < a.p_grid.size(); ++j) emit(a.p_grid[j], a.values[j].real());
  return os.str();
}

std::string scattering_csv(const std::vector<ScatteringResult<double>>& rows, Units units) {
  const bool lab = units == Units::lab;
  std::vector<std::string> cols{"theta_deg", "q", "f", "dcs"};
  if (lab) cols.insert(cols.end(), {"q_per_m", "dcs_m2"});
  std::ostringstream os;
  os << join_header(cols);
  const UnitSystem<double> u{};
  for (const auto& r : rows) {
    Row row{{r.transfer.theta * 180.0 / pi<double>, r.transfer.q, r.amplitude, r.dcs}};
    if (lab) row.v.insert(row.v.end(), {r.transfer.q / u.bohr_in_meters, r.dcs * u.bohr_in_meters * u.bohr_in_meters});
    row.flush_to(os);
  }
  return os.str();
}

std::string ledger_csv(const std::vector<Observables<double>>& rows, Units units) {
  const bool lab = units == Units::lab;
  std::vector<std::string> cols{"t", "norm", "KE", "PE", "E"};
  if (lab) cols.insert(cols.end(), {"KE_eV", "PE_eV", "E_eV"});
  std::ostringstream os;
  os << join_header(cols);
  for (const auto& o : rows) {
    Row row{{o.t, o.norm, o.kinetic, o.potential, o.energy}};
    if (lab) row.v.insert(row.v.end(), {hartree_to_ev(o.kinetic), hartree_to_ev(o.potential), hartree_to_ev(o.energy)});
    row.flush_to(os);
  }
  return os.str();
}

std::string snapshots_csv(const PropagationRun<double>& run) {
  if (run.snapshots.empty()) throw PreconditionError("run has no snapshots to write");
  std::ostringstream os;
  os << "t,node,re,im\n";
  for (const auto& s : run.snapshots) {
    const std::string t = format_number(s.t);
    for (Index i = 0; i < s.values.size(); ++i)
      os << t << ',' << i << ',' << format_number(s.values[i].real()) << ',' << format_number(s.values[i].imag())
         << '\n';
  }
  return os.str();
}

}  // namespace wavelab::report
