#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nlde/config.hpp"
#include "nlde/run_study.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver and study harness for the weakly nonlinear Dirac equation"};
  std::string config_path;
  std::string out_dir;
  int threads = 1;
  bool seed_check = false;
  app.add_option("config", config_path, "study configuration (JSON)");
  app.add_option("--out", out_dir, "output directory (overrides the config's out)");
  app.add_option("--threads", threads, "concurrent study cells")->check(CLI::PositiveNumber);
  app.add_flag("--seed-check", seed_check, "run the invariant suite and exit");
  CLI11_PARSE(app, argc, argv);

  if (seed_check) return nlde::run_seed_check(std::cout) ? 0 : 1;
  if (config_path.empty()) {
    std::cerr << "error: a config path is required\n" << app.help();
    return 2;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read " << config_path << "\n";
    return 2;
  }
  std::ostringstream text;
  text << in.rdbuf();

  nlde::StudyConfig config;
  try {
    config = nlde::parse_config(text.str());
  } catch (const nlde::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  std::optional<std::filesystem::path> out;
  if (!out_dir.empty()) out = out_dir;
  return nlde::run_study(config, std::cout, out, threads);
}
