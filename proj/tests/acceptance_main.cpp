// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in the suite implementations.

#include <cstdio>
#include <string>

#include "stralg/scenario.hpp"

using namespace stralg;

namespace {

int failures = 0;

void report(int idx, const std::string& what, bool pass,
            const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx,
              what.c_str(), detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const SuiteResult& r, std::initializer_list<const char*> keys) {
  std::string out;
  char buf[64];
  for (const char* k : keys) {
    auto it = r.values.find(k);
    if (it == r.values.end()) continue;
    std::snprintf(buf, sizeof(buf), "%s=%.3g ", k, it->second);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "t=%.0fms", r.time_ms);
  out += buf;
  if (!r.error.empty()) out += " error: " + r.error;
  return out;
}

}  // namespace

int main() {
  SuiteConfig cfg;

  // 1. Courant axioms on T^2/T^3, 20 seeded data sets, anomaly injection.
  {
    SuiteResult r = run_suite("courant-axioms", cfg);
    bool pass = r.pass && r.time_ms <= 60000.0;
    report(1, "Courant axioms (D1)-(D5) and anomaly injection", pass,
           fmt(r, {"max_axiom_residual", "broken_d1"}));
  }
  // 2. Picard group: axioms, Ad homomorphism, Jacobi, Aeppli invariance.
  {
    SuiteResult r = run_suite("picard-group", cfg);
    report(2, "Picard group laws and exp-path constraint", r.pass,
           fmt(r, {"max_group_residual", "max_exp_path_residual"}));
  }
  // 3. Bott-Chern secondary classes: cocycle and dd^c identity.
  {
    SuiteResult r = run_suite("bott-chern", cfg);
    report(3, "Bott-Chern cocycle and dd^c transgression", r.pass,
           fmt(r, {"cocycle_class_norm", "ddc_residual_order8",
                   "observed_order"}));
  }
  // 4. Chern correspondence round trips.
  {
    SuiteResult r = run_suite("chern-correspondence", cfg);
    report(4, "Chern correspondence round trips", r.pass,
           fmt(r, {"max_round_trip_residual"}));
  }
  // 5. Moment-map calculus and signature behavior.
  {
    SuiteResult r = run_suite("moment-map", cfg);
    report(5, "moment-map calculus vs finite differences", r.pass,
           fmt(r, {"lambda_fd_residual", "omega_fd_residual", "g_vs_omega_j",
                   "moment_action_residual"}));
  }
  // 6. Flat Hull-Strominger fixture.
  {
    SuiteResult r = run_suite("calabi-residual", cfg);
    report(6, "flat Hull-Strominger fixture", r.pass,
           fmt(r, {"hym", "balanced", "anomaly", "max_moment"}));
  }
  // 7. Linearized complex, adjointness, gauge fixing, Condition A kernels.
  {
    SuiteResult r = run_suite("condition-a", cfg);
    report(7, "linearized complex and Condition A kernels", r.pass,
           fmt(r, {"complex_property", "adjointness", "gauge_conditions",
                   "kernel_u1", "kernel_su2"}));
  }
  // 8. Kaehler-cone metric vs finite-difference Hessian; definiteness.
  {
    SuiteResult r = run_suite("cone-metric", cfg);
    bool pass = r.pass && r.time_ms <= 10000.0;
    report(8, "cone metric vs Hessian of the potential", pass,
           fmt(r, {"hessian_residual", "min_eigenvalue_pd_window",
                   "max_eigenvalue_ell_gt2"}));
  }
  // 9. Cross-path consistency of the three metric routes.
  {
    SuiteResult r = run_suite("fibre-metric", cfg);
    report(9, "fibre metric vs cone metric vs dilaton metric", r.pass,
           fmt(r, {"fibre_vs_cone", "fibre_vs_dilaton"}));
  }
  // 10. Conjectured inequality margin.
  {
    SuiteResult r = run_suite("conjecture", cfg);
    report(10, "conjecture margin positivity", r.pass,
           fmt(r, {"min_margin", "margin_at_zero"}));
  }
  // 11. Paper-anchored numbers and scenario validation of the level window.
  {
    SuiteResult r = run_suite("paper-numbers", cfg);
    bool window_ok = false;
    try {
      json bad = builtin_scenario("quintic-cone");
      bad["cone"]["ell_pd"] = {1.2};  // outside ]4/3, 2[
      scenario_from_json(bad);
    } catch (const Error&) {
      window_ok = true;
    }
    bool window_edge = false;
    try {
      json bad = builtin_scenario("quintic-cone");
      bad["cone"]["ell_pd"] = {2.0};  // endpoint excluded
      scenario_from_json(bad);
    } catch (const Error&) {
      window_edge = true;
    }
    bool pass = r.pass && window_ok && window_edge;
    report(11, "deformation dimension 224 -> 450; level window ]4/3,2[",
           pass, fmt(r, {"deformation_dimension_224"}));
  }

  std::printf("%s: %d criterion(s) failed\n",
              failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              failures);
  return failures == 0 ? 0 : 1;
}
