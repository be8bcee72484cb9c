#pragma once

#include "tstruct/corpus.hpp"
#include "tstruct/json_io.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tstruct {

struct CheckResult {
  std::string name;
  bool pass = true;
  long long cases = 0;
  long long failures = 0;
  std::string detail;  // first counterexample, or a short summary
  double seconds = 0;
};

struct SuiteConfig {
  std::uint64_t seed = kDefaultSeed;
  int complexes = 500;
  int pairs = 200;
  int samples = 200;
  int exponent_cap = 12;
  std::function<void(const std::string&)> progress;  // optional
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass() const;
};

Json to_json(const CheckResult& c, bool timings = false);
Json to_json(const SuiteReport& r, bool timings = false);

// spectrum, filtration, zmodules, truncation, orthogonality, oracle, duality, all
const std::vector<std::string>& suite_names();
// Throws std::invalid_argument on an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;  // 0: no time limit
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool pass() const;
};

std::vector<Criterion> run_acceptance(const SuiteConfig& cfg);

// Census counts used by the CLI and the tests.
FinPoset two_chain_poset();
// Brute-force census: every map from the window to specialization-closed
// subsets, filtered for monotonicity, plus the constants.
std::vector<SpFiltration> brute_force_census(const Spectrum& spec, int a, int b);

}  // namespace tstruct
