#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "caginalp/config.hpp"
#include "caginalp/error.hpp"
#include "caginalp/harness.hpp"

namespace {

int report(const caginalp::HarnessResult& r) {
  std::ostream& os = r.exit_code == 0 ? std::cout : std::cerr;
  if (!r.message.empty()) os << r.message << '\n';
  for (const auto& p : r.artifacts) std::cout << "  wrote " << p.string() << '\n';
  return r.exit_code;
}

int with_config(const std::string& path, const std::string& out, bool study) {
  caginalp::RunConfig cfg;
  try {
    cfg = caginalp::load_config(path);
  } catch (const caginalp::ConfigError& e) {
    std::cerr << "invalid config " << path << ": " << e.what() << '\n';
    return 1;
  }
  const std::filesystem::path dir = out.empty() ? std::filesystem::path(cfg.output_dir) : std::filesystem::path(out);
  if (!study && cfg.mode != caginalp::RunMode::Single) {
    std::cerr << "config mode is " << caginalp::to_string(cfg.mode) << "; use 'study'\n";
    return 1;
  }
  if (study && cfg.mode == caginalp::RunMode::Single) {
    std::cerr << "config mode is single; use 'run'\n";
    return 1;
  }
  return report(study ? caginalp::run_study(cfg, dir) : caginalp::run_single(cfg, dir));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-implicit phase-field solver and verification harness"};
  app.require_subcommand(1);

  std::string config, out, trajectory;
  double tolerance = 1e-10;

  auto* run = app.add_subcommand("run", "Run one configuration");
  run->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory (overrides output.dir)");

  auto* study = app.add_subcommand("study", "Run a convergence, a-priori or source-average study");
  study->add_option("--config", config, "JSON study configuration")->required()->check(CLI::ExistingFile);
  study->add_option("--out", out, "Output directory (overrides output.dir)");

  auto* ids = app.add_subcommand("check-identities", "Check interpolant identities of a trajectory CSV");
  ids->add_option("--trajectory", trajectory, "trajectory_*.csv")->required()->check(CLI::ExistingFile);
  ids->add_option("--out", out, "Directory for identities.csv");
  ids->add_option("--tolerance", tolerance, "Relative tolerance")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return with_config(config, out, false);
    if (*study) return with_config(config, out, true);
    return report(caginalp::check_trajectory_identities(trajectory, out, tolerance));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
