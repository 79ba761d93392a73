#include "qne/cli_runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "qne/adversary_search.hpp"
#include "qne/entanglement_metrics.hpp"
#include "qne/measurement_sim.hpp"
#include "qne/optics_model.hpp"
#include "qne/random.hpp"
#include "qne/version.hpp"

namespace qne {
namespace {

using nlohmann::json;

constexpr int kBootstrapResamples = 1000;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) {
      row += ',';
    }
    row += fields[i];
  }
  return row;
}

bool mode_uses_model(Mode mode) {
  return mode == Mode::sweep2q || mode == Mode::sweep4q || mode == Mode::shots2q ||
         mode == Mode::shots4q;
}

std::string column_header(Mode mode) {
  switch (mode) {
    case Mode::sweep2q:
    case Mode::sweep4q:
      return "eta,negativity,witness_expectation,analytic_prediction";
    case Mode::adversary2q:
    case Mode::adversary4q:
      return "eta,min_negativity,converged,restarts_used";
    case Mode::calibrate:
      return "eta,alpha0,alpha1,alpha2,survival_probability_at_beta_half";
    case Mode::shots2q:
    case Mode::shots4q:
      return "eta,estimate,sigma,true_value,shots";
  }
  throw ConfigError("unhandled mode");
}

std::string column_comment(Mode mode) {
  switch (mode) {
    case Mode::sweep2q:
    case Mode::sweep4q:
      return "eta, negativity, witness_expectation, analytic_prediction "
             "(dimensionless; analytic_prediction is the ideal curve eta/2)";
    case Mode::adversary2q:
    case Mode::adversary4q:
      return "eta (dimensionless), min_negativity (dimensionless), "
             "converged (0/1), restarts_used (count)";
    case Mode::calibrate:
      return "eta, alpha0, alpha1, alpha2 (filter intensity transmissions), "
             "survival_probability_at_beta_half (all dimensionless)";
    case Mode::shots2q:
    case Mode::shots4q:
      return "eta, estimate, sigma, true_value (dimensionless), "
             "shots (count per setting)";
  }
  throw ConfigError("unhandled mode");
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_path(const std::string& out) {
  const std::string suffix = ".csv";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return out.substr(0, out.size() - suffix.size()) + ".manifest.json";
  }
  return out + ".manifest.json";
}

// Bounded worker pool; rows land at their task index, so assembly order is
// independent of completion order.
std::vector<std::string> run_pool(int n_tasks, int threads,
                                  const std::function<std::string(int)>& task) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, n_tasks));
  std::vector<std::string> rows(n_tasks);
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto body = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= n_tasks) {
        return;
      }
      try {
        rows[i] = task(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) {
    pool.emplace_back(body);
  }
  body();
  for (auto& t : pool) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
  return rows;
}

ProtocolResult run_two_qubit(const ExperimentConfig& c, double eta) {
  return c.imperfect ? imperfect_two_qubit(eta, c.bs_transmission, c.bs_reflection)
                     : two_qubit_protocol(eta);
}

ProtocolResult run_four_qubit(const ExperimentConfig& c, double eta) {
  return c.imperfect
             ? imperfect_protocol(c.input, eta, c.bs_transmission, c.bs_reflection)
             : four_qubit_protocol(c.input, eta);
}

std::string sweep_row(const ExperimentConfig& c, double eta) {
  const bool four = c.mode == Mode::sweep4q;
  const ProtocolResult res = four ? run_four_qubit(c, eta) : run_two_qubit(c, eta);
  const double witness = res.witness_expectation
                             ? *res.witness_expectation
                             : std::numeric_limits<double>::quiet_NaN();
  return join({fmt(eta), fmt(res.negativity), fmt(witness), fmt(eta / 2.0)});
}

std::string adversary_row(const ExperimentConfig& c, double eta, std::uint64_t task_seed) {
  const AdversaryOutcome out =
      c.mode == Mode::adversary4q
          ? minimize_negativity_4q(c.input, eta, c.restarts, task_seed)
          : minimize_negativity_2q(eta, c.restarts, task_seed);
  return join({fmt(eta), fmt(out.min_negativity), std::to_string(out.converged ? 1 : 0),
               std::to_string(out.restarts_used)});
}

std::string calibrate_row(const ExperimentConfig& c, double eta) {
  const FilterSettings f = calibrate_filters(eta, c.bs_transmission, c.bs_reflection);
  const OpticalParams params = optical_params(c.bs_transmission, c.bs_reflection, f);
  const double survival =
      survival_probability(DensityMatrix::maximally_mixed(1), params);
  return join({fmt(eta), fmt(f.alpha0), fmt(f.alpha1), fmt(f.alpha2), fmt(survival)});
}

std::string shots2q_row(const ExperimentConfig& c, double eta, int i) {
  const ProtocolResult res = run_two_qubit(c, eta);
  const auto settings = tomography_settings_2q();
  std::vector<CountRecord> records;
  records.reserve(settings.size());
  for (std::size_t j = 0; j < settings.size(); ++j) {
    records.push_back(measure(res.rho_out, settings[j], c.shots,
                              derive_seed(c.seed, i, j)));
  }
  const Bipartition cut = Bipartition::qubits(2, {0});
  const double estimate = negativity(tomography_2q(records), cut);
  const double sigma = bootstrap_sigma(
      records,
      [&cut](const std::vector<CountRecord>& r) { return negativity(tomography_2q(r), cut); },
      kBootstrapResamples, derive_seed(c.seed, i, 1000));
  return join({fmt(eta), fmt(estimate), fmt(sigma), fmt(res.negativity),
               std::to_string(c.shots)});
}

std::string shots4q_row(const ExperimentConfig& c, double eta, int i) {
  const ProtocolResult res = run_four_qubit(c, eta);
  const auto settings = witness_settings();
  std::vector<CountRecord> records;
  records.reserve(settings.size());
  for (std::size_t j = 0; j < settings.size(); ++j) {
    records.push_back(measure(res.rho_out, settings[j], c.shots,
                              derive_seed(c.seed, i, j)));
  }
  const WitnessEstimate we =
      witness_estimate(records, kBootstrapResamples, derive_seed(c.seed, i, 1000));
  return join({fmt(eta), fmt(we.value), fmt(we.sigma), fmt(*res.witness_expectation),
               std::to_string(c.shots)});
}

std::vector<std::string> compute_rows(const ExperimentConfig& c,
                                      const std::vector<double>& etas) {
  const auto task = [&](int i) -> std::string {
    const double eta = etas[i];
    switch (c.mode) {
      case Mode::sweep2q:
      case Mode::sweep4q:
        return sweep_row(c, eta);
      case Mode::adversary2q:
      case Mode::adversary4q:
        return adversary_row(c, eta, derive_seed(c.seed, i, 0));
      case Mode::calibrate:
        return calibrate_row(c, eta);
      case Mode::shots2q:
        return shots2q_row(c, eta, i);
      case Mode::shots4q:
        return shots4q_row(c, eta, i);
    }
    throw ConfigError("unhandled mode");
  };
  return run_pool(static_cast<int>(etas.size()), c.threads, task);
}

void write_outputs(const ExperimentConfig& c, const std::vector<std::string>& rows) {
  std::ofstream csv(c.output_path);
  if (!csv) {
    throw Error("cannot open output file " + c.output_path);
  }
  csv << "# mode: " << mode_name(c.mode) << "\n";
  if (mode_uses_model(c.mode)) {
    csv << "# model: " << (c.imperfect ? "unbalanced-bs" : "ideal") << "\n";
  }
  csv << "# columns: " << column_comment(c.mode) << "\n";
  csv << column_header(c.mode) << "\n";
  for (const auto& row : rows) {
    csv << row << "\n";
  }
  csv.flush();
  if (!csv) {
    throw Error("failed writing " + c.output_path);
  }

  json manifest{
      {"tool", "qne"},
      {"version", kVersion},
      {"generated_at_utc", utc_timestamp()},
      {"mode", mode_name(c.mode)},
      {"model", mode_uses_model(c.mode) ? (c.imperfect ? "unbalanced-bs" : "ideal")
                                        : "n/a"},
      {"rows", rows.size()},
      {"output", c.output_path},
      {"config",
       {{"eta_min", c.eta_grid.min},
        {"eta_max", c.eta_grid.max},
        {"steps", c.eta_grid.steps},
        {"p", c.input.p},
        {"q", c.input.q},
        {"r", c.input.r},
        {"bs_transmission", c.bs_transmission},
        {"bs_reflection", c.bs_reflection},
        {"shots", c.shots},
        {"seed", c.seed},
        {"restarts", c.restarts},
        {"imperfect", c.imperfect},
        {"threads", c.threads}}},
  };
  const std::string mpath = manifest_path(c.output_path);
  std::ofstream mf(mpath);
  if (!mf) {
    throw Error("cannot open manifest file " + mpath);
  }
  mf << manifest.dump(2) << "\n";
  mf.flush();
  if (!mf) {
    throw Error("failed writing " + mpath);
  }
}

}  // namespace

Mode mode_from_name(const std::string& name) {
  if (name == "sweep2q") return Mode::sweep2q;
  if (name == "sweep4q") return Mode::sweep4q;
  if (name == "adversary2q") return Mode::adversary2q;
  if (name == "adversary4q") return Mode::adversary4q;
  if (name == "calibrate") return Mode::calibrate;
  if (name == "shots2q") return Mode::shots2q;
  if (name == "shots4q") return Mode::shots4q;
  throw ConfigError("unknown mode '" + name + "'");
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::sweep2q: return "sweep2q";
    case Mode::sweep4q: return "sweep4q";
    case Mode::adversary2q: return "adversary2q";
    case Mode::adversary4q: return "adversary4q";
    case Mode::calibrate: return "calibrate";
    case Mode::shots2q: return "shots2q";
    case Mode::shots4q: return "shots4q";
  }
  throw ConfigError("unhandled mode");
}

void ExperimentConfig::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(eta_grid.min) || !in_unit(eta_grid.max) || eta_grid.min > eta_grid.max) {
    throw ConfigError("eta grid must satisfy 0 <= min <= max <= 1");
  }
  if (eta_grid.steps < 1) {
    throw ConfigError("steps must be >= 1");
  }
  if (!in_unit(input.p) || !in_unit(input.q) || !in_unit(input.r)) {
    throw ConfigError("p, q, r must lie in [0, 1]");
  }
  if (!(bs_transmission > 0.0 && bs_transmission < 1.0) ||
      !(bs_reflection > 0.0 && bs_reflection < 1.0)) {
    throw ConfigError("beam-splitter T and R must lie in (0, 1)");
  }
  if (bs_transmission + bs_reflection > 1.0 + 1e-9) {
    throw ConfigError("beam-splitter T + R must not exceed 1");
  }
  if (shots <= 0) {
    throw ConfigError("shots must be positive");
  }
  if (restarts < 1) {
    throw ConfigError("restarts must be >= 1");
  }
  if (threads < 0) {
    throw ConfigError("threads must be >= 0");
  }
  if (output_path.empty()) {
    throw ConfigError("output path must not be empty");
  }
  if (imperfect && !mode_uses_model(mode)) {
    throw ConfigError("--imperfect applies only to sweep and shots modes");
  }
}

std::vector<double> ExperimentConfig::eta_values() const {
  std::vector<double> etas;
  etas.reserve(eta_grid.steps);
  if (eta_grid.steps == 1) {
    etas.push_back(eta_grid.min);
    return etas;
  }
  const double span = eta_grid.max - eta_grid.min;
  for (int k = 0; k < eta_grid.steps; ++k) {
    etas.push_back(k == eta_grid.steps - 1
                       ? eta_grid.max
                       : eta_grid.min + span * k / (eta_grid.steps - 1));
  }
  return etas;
}

ExperimentConfig apply_config_json(const ExperimentConfig& base, const std::string& text) {
  ExperimentConfig c = base;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "mode") {
        c.mode = mode_from_name(value.get<std::string>());
      } else if (key == "eta_min") {
        c.eta_grid.min = value.get<double>();
      } else if (key == "eta_max") {
        c.eta_grid.max = value.get<double>();
      } else if (key == "steps") {
        c.eta_grid.steps = value.get<int>();
      } else if (key == "p") {
        c.input.p = value.get<double>();
      } else if (key == "q") {
        c.input.q = value.get<double>();
      } else if (key == "r") {
        c.input.r = value.get<double>();
      } else if (key == "bs_transmission") {
        c.bs_transmission = value.get<double>();
      } else if (key == "bs_reflection") {
        c.bs_reflection = value.get<double>();
      } else if (key == "shots") {
        c.shots = value.get<std::int64_t>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "restarts") {
        c.restarts = value.get<int>();
      } else if (key == "out") {
        c.output_path = value.get<std::string>();
      } else if (key == "imperfect") {
        c.imperfect = value.get<bool>();
      } else if (key == "threads") {
        c.threads = value.get<int>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config value has the wrong type: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config_file(const ExperimentConfig& base, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return apply_config_json(base, text.str());
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

int run(const ExperimentConfig& config) {
  try {
    config.validate();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  try {
    const std::vector<double> etas = config.eta_values();
    const std::vector<std::string> rows = compute_rows(config, etas);
    write_outputs(config, rows);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qne
