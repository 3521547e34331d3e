#pragma once

#include <iosfwd>

#include "wavelab/report/config.hpp"

namespace wavelab::report {

inline constexpr int exit_pass = 0;
inline constexpr int exit_check_failure = 1;
inline constexpr int exit_usage = 2;

/// Executes one configured command, writing its files under cfg.out_dir.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parse + run, as the wavelab executable does.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wavelab::report
