#pragma once

#include <map>
#include <string>

#include "stralg/moduli.hpp"

namespace stralg {

// One verification suite outcome: named residuals plus a pass flag; the
// tolerances actually used are reported alongside the values.
struct SuiteResult {
  std::string name;
  bool pass = false;
  double time_ms = 0.0;
  std::map<std::string, double> values;
  std::string error;
};

struct SuiteConfig {
  std::uint64_t seed = 20240901;
  int samples = 20;
  // cone-metric options
  IntersectionRing ring = IntersectionRing::quintic(8.0);
  IntersectionRing ring2 = IntersectionRing::bicubic(8.0);
  std::vector<double> ell_pd{1.5, 1.8};
  std::vector<double> ell_neg{2.5};
  int cone_points = 10;
  // error-injection knob for the negative test
  bool broken_anomaly = false;
  // tolerance overrides
  std::map<std::string, double> tol;

  double tol_or(const std::string& key, double def) const {
    auto it = tol.find(key);
    return it == tol.end() ? def : it->second;
  }
};

// Suite names understood by run_suite (the CLI `verify` verbs).
const std::vector<std::string>& suite_names();

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace stralg
