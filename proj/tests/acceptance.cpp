// Acceptance run: one PASS/FAIL line per criterion on the default grids and
// tolerances. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "airyprod/verify.hpp"

using namespace airyprod;

namespace {

struct Criterion {
  const char* name;
  double time_limit;  // seconds, 0 for none
  std::function<SuiteReport(const RunConfig&)> run;
};

}  // namespace

int main() {
  const RunConfig cfg;
  const Criterion criteria[] = {
      {"ode: shifted and zero-shift residuals on 500 points", 10.0, ode_checks},
      {"representation: contour vs oracle for U and W on 2000 points", 300.0, route_checks},
      {"contour relation: five-contour identity per sector, loop vanishes at z0=0", 0.0, relation_checks},
      {"real axis: half-line integrals vs oracle", 0.0, real_axis_checks},
      {"difference identities: sector-signed loop integral vs oracle", 0.0, difference_checks},
      {"greens: closed form vs time integral, weak field, operator residual", 120.0, greens_checks},
      {"oracle: connection identity, reflection, values at zero", 0.0, oracle_checks},
  };

  int failed = 0;
  int index = 1;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    std::string error;
    try {
      rep = c.run(cfg);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.time_limit <= 0.0 || secs < c.time_limit;
    const bool pass = error.empty() && !rep.checks.empty() && rep.passed() && in_time;
    if (!pass) ++failed;
    std::printf("%s %d %s | checks=%zu failures=%zu worst=%.3g time=%.2fs%s%s\n", pass ? "PASS" : "FAIL", index++,
                c.name, rep.checks.size(), rep.failures(), rep.worst_ratio(), secs,
                c.time_limit > 0.0 ? (in_time ? " (within limit)" : " (over time limit)") : "",
                error.empty() ? "" : (" error: " + error).c_str());
    if (!pass)
      for (const auto& chk : rep.checks)
        if (!chk.pass)
          std::printf("    %s at %s: residual %.3g > %.3g\n", chk.check.c_str(), chk.point.c_str(), chk.residual,
                      chk.tolerance);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
