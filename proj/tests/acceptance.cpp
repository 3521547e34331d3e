// One line per acceptance criterion; exits non-zero if any criterion fails.
#include <cmath>
#include <cstdio>

#include "wavelab/report/config.hpp"
#include "wavelab/report/verdict.hpp"

int main() {
  using namespace wavelab::report;
  const VerdictReport report = run_verification(RunConfig{});
  int failed = 0;
  for (int k = 1; k <= criterion_count; ++k) {
    const bool ok = report.criterion_pass(k);
    failed += ok ? 0 : 1;
    std::printf("criterion %d (%s): %s\n", k, criterion_title(k), ok ? "PASS" : "FAIL");
    for (const auto& c : report.checks) {
      if (c.criterion != k || c.pass) continue;
      std::printf("    failed check: %s = %.6g (expected %.6g, tol %.3g)\n", c.name.c_str(), c.computed, c.expected,
                  c.tolerance);
    }
  }
  std::printf("%d of %d criteria passed\n", criterion_count - failed, criterion_count);
  return failed == 0 ? 0 : 1;
}
