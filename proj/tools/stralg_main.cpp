#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "stralg/scenario.hpp"

using namespace stralg;

namespace {

int thread_count() {
  const char* env = std::getenv("STRALG_THREADS");
  if (!env) return 1;
  int t = std::atoi(env);
  return t > 0 ? t : 1;
}

void write_or_print(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "stralg - string algebroid workbench on flat complex tori: exact "
      "Courant/Picard calculus, moment maps and moduli metrics"};
  app.require_subcommand(1);

  std::string scenario_arg, out_file, fixtures_dir;
  const char* env_fix = std::getenv("STRALG_FIXTURES");
  if (env_fix) fixtures_dir = env_fix;

  auto* verify = app.add_subcommand(
      "verify", "run the verification suites requested by a scenario");
  verify->add_option("scenario", scenario_arg,
                     "scenario file, fixture name or builtin scenario")
      ->required();
  verify->add_option("--out", out_file, "write the JSON report to a file");
  verify->add_option("--fixtures", fixtures_dir,
                     "directory with scenario fixtures");

  SweepSpec spec;
  std::string ray_arg;
  auto* sweep = app.add_subcommand("sweep", "emit CSV plot data");
  sweep->add_option("scenario", scenario_arg, "scenario file or name")
      ->required();
  sweep
      ->add_option("--quantity", spec.quantity,
                   "M_ell | potential_K | cone_eigenvalues | conjecture_margin")
      ->required();
  sweep->add_option("--min", spec.pmin, "sweep parameter minimum");
  sweep->add_option("--max", spec.pmax, "sweep parameter maximum");
  sweep->add_option("--steps", spec.steps, "number of sweep points");
  sweep->add_option("--ell", spec.ell, "level for M_ell / potential_K");
  sweep->add_option("--ray", ray_arg, "cone ray, comma separated");
  sweep->add_option("--out", out_file, "write the CSV to a file");
  sweep->add_option("--fixtures", fixtures_dir, "fixtures directory");

  auto* fixtures = app.add_subcommand("fixtures", "fixture utilities");
  auto* fixtures_list =
      fixtures->add_subcommand("list", "list available scenarios");
  fixtures_list->add_option("--fixtures", fixtures_dir,
                            "fixtures directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      Scenario s = load_scenario(scenario_arg, fixtures_dir);
      json report = run_scenario(s, thread_count());
      write_or_print(report.dump(1) + "\n", out_file);
      return report_passed(report) ? 0 : 1;
    }
    if (sweep->parsed()) {
      Scenario s = load_scenario(scenario_arg, fixtures_dir);
      if (!ray_arg.empty()) {
        std::stringstream ss(ray_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) spec.ray.push_back(std::stod(tok));
      }
      write_or_print(run_sweep(s, spec), out_file);
      return 0;
    }
    if (fixtures_list->parsed()) {
      for (auto& n : builtin_scenario_names())
        std::cout << n << " (builtin)\n";
      if (!fixtures_dir.empty() &&
          std::filesystem::is_directory(fixtures_dir)) {
        for (auto& e : std::filesystem::directory_iterator(fixtures_dir))
          if (e.path().extension() == ".json")
            std::cout << e.path().stem().string() << " (" << e.path().string()
                      << ")\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
