#pragma once

#include "stralg/io.hpp"
#include "stralg/suites.hpp"

namespace stralg {

// A scenario file drives the CLI: which suites to run, seeds, tolerance
// overrides and the intersection-ring fixtures for the cone checks.
struct Scenario {
  std::string name = "unnamed";
  int n = 2;
  std::size_t mode_cap = 100000;
  int grid_N = 0;
  std::vector<std::string> checks;
  SuiteConfig config;
};

IntersectionRing ring_from_json(const json& j);
IntersectionRing ring_from_csv(const std::string& text, double vol_mu = 1.0);

// Parses and validates. Enforces: known suite names, positive tolerances,
// the level window ]4/3,2[ for the positive-definite cone checks and
// ell > 2 for the negated ones, existing ring fixture references.
Scenario scenario_from_json(const json& j);

// Resolves a path, a file in `fixtures_dir`, or a builtin name.
Scenario load_scenario(const std::string& name_or_path,
                       const std::string& fixtures_dir = "");

std::vector<std::string> builtin_scenario_names();
json builtin_scenario(const std::string& name);

// Runs the requested suites (optionally concurrently) and assembles the
// deterministic report; `passed` reflects the exit-status contract.
json run_scenario(const Scenario& s, int threads = 1);
bool report_passed(const json& report);

struct SweepSpec {
  std::string quantity;  // M_ell | potential_K | cone_eigenvalues |
                         // conjecture_margin
  double pmin = 0.5, pmax = 2.0;
  int steps = 10;
  double ell = 1.0;
  std::vector<double> ray;  // cone-ray direction (defaults to all ones)
};

// CSV with a header row and one row per sweep point (deterministic order).
std::string run_sweep(const Scenario& s, const SweepSpec& spec);

}  // namespace stralg
