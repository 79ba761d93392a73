#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "qne/cli_runner.hpp"
#include "qne/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Density-matrix simulator for entanglement generated from classical "
      "correlations by local amplitude-damping noise"};
  app.set_version_flag("--version", qne::kVersion);

  std::string mode;
  app.add_option("mode", mode,
                 "One of: sweep2q, sweep4q, adversary2q, adversary4q, calibrate, "
                 "shots2q, shots4q (default sweep4q)");
  std::string config_path;
  app.add_option("--config", config_path,
                 "Flat JSON config file; explicit flags override its values");

  double eta_min = 0.0;
  double eta_max = 1.0;
  int steps = 21;
  app.add_option("--eta-min", eta_min, "Damping grid start (default 0)");
  app.add_option("--eta-max", eta_max, "Damping grid end (default 1)");
  app.add_option("--steps", steps, "Number of grid points (default 21)");

  double p = 0.5;
  double q = 1.0;
  double r = 0.0;
  app.add_option("--p", p, "Input mixing weight (default 0.5)");
  app.add_option("--q", q, "Input |0> weight of the first branch (default 1)");
  app.add_option("--r", r, "Input |0> weight of the second branch (default 0)");

  std::int64_t shots = 100000;
  std::uint64_t seed = 0;
  int restarts = 32;
  int threads = 0;
  app.add_option("--shots", shots, "Shots per measurement setting (default 100000)");
  app.add_option("--seed", seed, "Master seed for all sampling (default 0)");
  app.add_option("--restarts", restarts, "Adversary search restarts (default 32)");
  app.add_option("--threads", threads, "Worker threads, 0 = all cores (default 0)");

  double bs_t = 0.575;
  double bs_r = 0.425;
  app.add_option("--bs-transmission", bs_t,
                 "Beam-splitter intensity transmission (default 0.575)");
  app.add_option("--bs-reflection", bs_r,
                 "Beam-splitter intensity reflection (default 0.425)");

  bool imperfect = false;
  app.add_flag("--imperfect", imperfect,
               "Replace ideal Hadamards with the unbalanced-splitter model");
  std::string out = "results.csv";
  app.add_option("--out", out, "Output CSV path (default results.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  qne::ExperimentConfig config;
  try {
    if (app.count("--config") > 0) {
      config = qne::load_config_file(config, config_path);
    }
    if (app.count("mode") > 0) config.mode = qne::mode_from_name(mode);
    if (app.count("--eta-min") > 0) config.eta_grid.min = eta_min;
    if (app.count("--eta-max") > 0) config.eta_grid.max = eta_max;
    if (app.count("--steps") > 0) config.eta_grid.steps = steps;
    if (app.count("--p") > 0) config.input.p = p;
    if (app.count("--q") > 0) config.input.q = q;
    if (app.count("--r") > 0) config.input.r = r;
    if (app.count("--shots") > 0) config.shots = shots;
    if (app.count("--seed") > 0) config.seed = seed;
    if (app.count("--restarts") > 0) config.restarts = restarts;
    if (app.count("--threads") > 0) config.threads = threads;
    if (app.count("--bs-transmission") > 0) config.bs_transmission = bs_t;
    if (app.count("--bs-reflection") > 0) config.bs_reflection = bs_r;
    if (app.count("--imperfect") > 0) config.imperfect = imperfect;
    if (app.count("--out") > 0) config.output_path = out;
  } catch (const qne::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  return qne::run(config);
}
