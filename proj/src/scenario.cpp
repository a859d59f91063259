#include "stralg/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "stralg/dilaton.hpp"

namespace stralg {

IntersectionRing ring_from_json(const json& j) {
  if (j.is_string()) {
    std::string name = j.get<std::string>();
    if (name == "quintic") return IntersectionRing::quintic(8.0);
    if (name == "bicubic") return IntersectionRing::bicubic(8.0);
    throw Error("unknown ring fixture: " + name);
  }
  int h11 = j.at("h11").get<int>();
  std::vector<std::array<double, 4>> entries;
  for (auto& e : j.at("kappa"))
    entries.push_back({e[0].get<double>(), e[1].get<double>(),
                       e[2].get<double>(), e[3].get<double>()});
  return IntersectionRing::from_entries(h11, entries, j.value("vol_mu", 1.0));
}

IntersectionRing ring_from_csv(const std::string& text, double vol_mu) {
  std::vector<std::array<double, 4>> entries;
  std::istringstream in(text);
  std::string line;
  int h11 = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || std::isalpha(line[0])) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double i, j, k, v;
    if (!(ls >> i >> j >> k >> v)) continue;
    entries.push_back({i, j, k, v});
    h11 = std::max({h11, int(i) + 1, int(j) + 1, int(k) + 1});
  }
  if (entries.empty()) throw Error("ring_from_csv: no entries parsed");
  return IntersectionRing::from_entries(h11, entries, vol_mu);
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.name = j.value("name", "unnamed");
  s.n = j.value("n", 2);
  if (s.n < 1) throw Error("scenario: torus dimension must be >= 1");
  s.mode_cap = j.value("mode_cap", std::size_t(100000));
  s.grid_N = j.value("grid_N", 0);
  s.config.seed = j.value("seed", std::uint64_t(20240901));
  s.config.samples = j.value("samples", 20);
  s.config.broken_anomaly = j.value("broken_anomaly", false);

  if (j.contains("checks"))
    s.checks = j.at("checks").get<std::vector<std::string>>();
  else
    s.checks = suite_names();
  for (auto& c : s.checks) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), c) == names.end())
      throw Error("scenario: unknown suite '" + c + "'");
  }

  if (j.contains("tolerances")) {
    for (auto& [k, v] : j.at("tolerances").items()) {
      double t = v.get<double>();
      if (t <= 0.0)
        throw Error("scenario: tolerance '" + k + "' must be positive");
      s.config.tol[k] = t;
    }
  }

  if (j.contains("cone")) {
    const json& c = j.at("cone");
    if (c.contains("ring")) s.config.ring = ring_from_json(c.at("ring"));
    if (c.contains("ring2")) s.config.ring2 = ring_from_json(c.at("ring2"));
    if (c.contains("ell_pd"))
      s.config.ell_pd = c.at("ell_pd").get<std::vector<double>>();
    if (c.contains("ell_neg"))
      s.config.ell_neg = c.at("ell_neg").get<std::vector<double>>();
    s.config.cone_points = c.value("points", 10);
  }
  // the level window for the positive-definite checks is ]4/3, 2[
  for (double l : s.config.ell_pd)
    if (!(l > 4.0 / 3.0 && l < 2.0))
      throw Error(
          "scenario: cone ell_pd level " + std::to_string(l) +
          " is outside the window ]4/3, 2[");
  for (double l : s.config.ell_neg)
    if (!(l > 2.0))
      throw Error("scenario: cone ell_neg level " + std::to_string(l) +
                  " must exceed 2");
  return s;
}

std::vector<std::string> builtin_scenario_names() {
  return {"flat-hs-torus", "quintic-cone", "broken-anomaly", "full"};
}

json builtin_scenario(const std::string& name) {
  json j;
  j["name"] = name;
  j["seed"] = 20240901;
  if (name == "flat-hs-torus") {
    j["n"] = 3;
    j["checks"] = {"calabi-residual", "moment-map", "fibre-metric"};
  } else if (name == "quintic-cone") {
    j["n"] = 3;
    j["checks"] = {"cone-metric", "conjecture", "paper-numbers"};
    j["cone"] = {{"ring", "quintic"},
                 {"ring2", "bicubic"},
                 {"ell_pd", {1.5, 1.8}},
                 {"ell_neg", {2.5}},
                 {"points", 10}};
  } else if (name == "broken-anomaly") {
    j["n"] = 2;
    j["checks"] = {"courant-axioms"};
    j["broken_anomaly"] = true;
  } else if (name == "full") {
    j["n"] = 3;
    j["checks"] = suite_names();
  } else {
    throw Error("unknown builtin scenario: " + name);
  }
  return j;
}

Scenario load_scenario(const std::string& name_or_path,
                       const std::string& fixtures_dir) {
  namespace fs = std::filesystem;
  if (fs::exists(name_or_path))
    return scenario_from_json(load_json_file(name_or_path));
  if (!fixtures_dir.empty()) {
    fs::path p = fs::path(fixtures_dir) / (name_or_path + ".json");
    if (fs::exists(p)) return scenario_from_json(load_json_file(p.string()));
  }
  auto names = builtin_scenario_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end())
    return scenario_from_json(builtin_scenario(name_or_path));
  throw Error("scenario not found: " + name_or_path);
}

json run_scenario(const Scenario& s, int threads) {
  json report;
  report["scenario"] = s.name;
  report["seed"] = s.config.seed;
  json suites = json::array();

  std::vector<SuiteResult> results(s.checks.size());
  if (threads > 1) {
    std::vector<std::future<SuiteResult>> futs;
    for (auto& c : s.checks)
      futs.push_back(std::async(std::launch::async,
                                [&, c] { return run_suite(c, s.config); }));
    for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < s.checks.size(); ++i)
      results[i] = run_suite(s.checks[i], s.config);
  }

  bool all = true;
  for (auto& r : results) {
    json jr;
    jr["name"] = r.name;
    jr["pass"] = r.pass;
    jr["time_ms"] = r.time_ms;
    json vals;
    for (auto& [k, v] : r.values) vals[k] = v;
    jr["residuals"] = vals;
    if (!r.error.empty()) jr["error"] = r.error;
    suites.push_back(jr);
    all = all && r.pass;
  }
  report["suites"] = suites;
  report["pass"] = all;
  return report;
}

bool report_passed(const json& report) { return report.value("pass", false); }

std::string run_sweep(const Scenario& s, const SweepSpec& spec) {
  std::ostringstream out;
  out.precision(15);
  auto param_at = [&](int i) {
    return spec.steps <= 1
               ? spec.pmin
               : spec.pmin + (spec.pmax - spec.pmin) * i / (spec.steps - 1);
  };

  if (spec.quantity == "M_ell") {
    out << "lambda,M_ell\n";
    TorusFrame f{s.n, s.mode_cap};
    TrigForm w0 = standard_kaehler_form(f);
    PairingSpec p = PairingSpec::trace(1);
    for (int i = 0; i < spec.steps; ++i) {
      double lam = param_at(i);
      Configuration W(lam * w0, TrigForm::zero(f, 2, 1),
                      TrigForm::zero(f, 1, 1), Connection::flat(f, p),
                      spec.ell, VolumeKind::Standard, s.grid_N);
      out << lam << "," << m_ell(W) << "\n";
    }
    return out.str();
  }

  Eigen::VectorXd ray = Eigen::VectorXd::Ones(s.config.ring.h11);
  if (!spec.ray.empty()) {
    if (static_cast<int>(spec.ray.size()) != s.config.ring.h11)
      throw Error("sweep: ray dimension does not match the ring");
    for (int i = 0; i < ray.size(); ++i) ray[i] = spec.ray[i];
  }

  if (spec.quantity == "potential_K") {
    out << "t,potential_K\n";
    for (int i = 0; i < spec.steps; ++i) {
      double t = param_at(i);
      out << t << "," << potential_K(s.config.ring, t * ray, spec.ell)
          << "\n";
    }
    return out.str();
  }
  if (spec.quantity == "cone_eigenvalues") {
    int h = s.config.ring.h11;
    out << "ell";
    for (int i = 0; i < 2 * h; ++i) out << ",eig" << i + 1;
    out << "\n";
    for (int i = 0; i < spec.steps; ++i) {
      double ell = param_at(i);
      Eigen::MatrixXd G = cone_metric_matrix(s.config.ring, ray, ell);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
      out << ell;
      for (int k = 0; k < 2 * h; ++k) out << "," << es.eigenvalues()[k];
      out << "\n";
    }
    return out.str();
  }
  if (spec.quantity == "conjecture_margin") {
    out << "t,margin\n";
    Eigen::VectorXd adot = Eigen::VectorXd::Ones(s.config.ring.h11);
    for (int i = 0; i < spec.steps; ++i) {
      double t = param_at(i);
      out << t << ","
          << conjecture_margin_ring(s.config.ring, t * ray, adot) << "\n";
    }
    return out.str();
  }
  throw Error("sweep: unknown quantity '" + spec.quantity + "'");
}

}  // namespace stralg
