#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qne/protocols.hpp"

namespace qne {

enum class Mode {
  sweep2q,
  sweep4q,
  adversary2q,
  adversary4q,
  calibrate,
  shots2q,
  shots4q,
};

Mode mode_from_name(const std::string& name);  // throws ConfigError
std::string mode_name(Mode mode);

struct EtaGrid {
  double min = 0.0;
  double max = 1.0;
  int steps = 21;
};

// Full description of one batch run.  Defaults mirror the experiment:
// p=0.5, q=1, r=0, splitter T=0.575 / R=0.425, a 21-point eta grid.
struct ExperimentConfig {
  Mode mode = Mode::sweep4q;
  EtaGrid eta_grid;
  DiagonalInputParams input;
  double bs_transmission = 0.575;
  double bs_reflection = 0.425;
  std::int64_t shots = 100000;
  std::uint64_t seed = 0;
  int restarts = 32;
  std::string output_path = "results.csv";
  bool imperfect = false;  // unbalanced-splitter model instead of Hadamards
  int threads = 0;         // 0 = all hardware threads

  void validate() const;  // throws ConfigError
  std::vector<double> eta_values() const;
};

// Flat-JSON config layer; values present in the document replace those in
// `base`, unknown keys are rejected.  Precedence is flags > file > defaults,
// with the flag layer applied by the CLI on top of this.
ExperimentConfig apply_config_json(const ExperimentConfig& base, const std::string& text);
ExperimentConfig load_config_file(const ExperimentConfig& base, const std::string& path);

// Deterministic per-task seed stream, also the contract that makes every
// CSV row independently recomputable: row i of a shots run uses
// derive_seed(seed, i, j) for setting j and derive_seed(seed, i, 1000) for
// the bootstrap; adversary row i uses derive_seed(seed, i, 0).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

// Executes the run and writes output_path plus a sibling .manifest.json.
// Returns 0 on success, 1 on config validation failure, 2 on numerical or
// I/O failure; diagnostics go to stderr.
int run(const ExperimentConfig& config);

}  // namespace qne
