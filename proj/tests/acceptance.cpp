// One line per acceptance criterion; exit status 0 only if all pass.
#include "tstruct/suites.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

using namespace tstruct;

int main(int argc, char** argv) {
  SuiteConfig cfg;
  if (const char* env = std::getenv("TSTRUCT_SEED"); env && *env) cfg.seed = std::strtoull(env, nullptr, 10);
  bool verbose = argc > 1 && std::strcmp(argv[1], "-v") == 0;

  auto crit = run_acceptance(cfg);
  bool all = true;
  for (const auto& c : crit) {
    long long cases = 0, failures = 0;
    for (const auto& k : c.checks) cases += k.cases, failures += k.failures;
    std::printf("criterion %d: %s  %s  cases=%lld failures=%lld  %.2fs", c.id, c.pass() ? "PASS" : "FAIL",
                c.title.c_str(), cases, failures, c.seconds);
    if (c.budget_seconds > 0) std::printf(" (budget %.0fs)", c.budget_seconds);
    std::printf("\n");
    if (verbose || !c.pass())
      for (const auto& k : c.checks)
        std::printf("    %-48s %s  %s\n", k.name.c_str(), k.pass ? "ok" : "FAILED", k.detail.c_str());
    all = all && c.pass();
  }
  std::printf("seed %llu: %s\n", static_cast<unsigned long long>(cfg.seed), all ? "all criteria pass" : "FAILURES");
  return all ? 0 : 1;
}
