#include "qne/measurement_sim.hpp"

#include <bit>
#include <cmath>
#include <utility>

#include "qne/errors.hpp"
#include "qne/random.hpp"

namespace qne {
namespace {

// Columns are the +1 and -1 eigenvectors of the chosen Pauli, so the outcome
// distribution is the diagonal of V^dag rho V.
ComplexMatrix basis_rotation(char pauli) {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix v(2, 2);
  switch (pauli) {
    case 'Z':
      v << 1, 0, 0, 1;
      break;
    case 'X':
      v << s, s, s, -s;
      break;
    case 'Y':
      v << Complex(s, 0), Complex(s, 0), Complex(0, s), Complex(0, -s);
      break;
    default:
      throw OutOfRange(std::string("unknown Pauli basis '") + pauli + "'");
  }
  return v;
}

// Records listed in witness_settings() order; throws unless the input covers
// exactly those settings.
std::vector<CountRecord> canonical_witness_records(const std::vector<CountRecord>& records) {
  const auto wanted = witness_settings();
  if (records.size() != wanted.size()) {
    throw MissingSetting("witness estimation needs exactly " +
                         std::to_string(wanted.size()) + " records, got " +
                         std::to_string(records.size()));
  }
  std::vector<CountRecord> ordered;
  ordered.reserve(wanted.size());
  for (const auto& setting : wanted) {
    const CountRecord* found = nullptr;
    for (const auto& record : records) {
      if (record.setting.paulis == setting.paulis) {
        if (found != nullptr) {
          throw MissingSetting("duplicate record for setting " + setting.paulis);
        }
        found = &record;
      }
    }
    if (found == nullptr) {
      throw MissingSetting("no record for setting " + setting.paulis);
    }
    found->check();
    ordered.push_back(*found);
  }
  return ordered;
}

double witness_value(const std::vector<CountRecord>& ordered) {
  static const std::vector<PauliTerm> terms = build_witness_abcd().pauli_terms();
  double value = 0.0;
  for (const auto& term : terms) {
    const CountRecord* usable = nullptr;
    for (const auto& record : ordered) {
      bool compatible = true;
      for (std::size_t j = 0; j < term.paulis.size(); ++j) {
        if (term.paulis[j] != 'I' && term.paulis[j] != record.setting.paulis[j]) {
          compatible = false;
          break;
        }
      }
      if (compatible) {
        usable = &record;
        break;
      }
    }
    if (usable == nullptr) {
      throw MissingSetting("no record measures " + term.paulis);
    }
    value += term.coeff * parity_expectation(*usable, term.paulis);
  }
  return value;
}

}  // namespace

MeasurementSetting::MeasurementSetting(std::string basis) : paulis(std::move(basis)) {
  if (paulis.empty()) {
    throw OutOfRange("measurement setting must name at least one qubit");
  }
  for (char c : paulis) {
    if (c != 'X' && c != 'Y' && c != 'Z') {
      throw OutOfRange(std::string("measurement setting letter must be X, Y or Z, got '") +
                       c + "'");
    }
  }
}

void CountRecord::check() const {
  const auto n = setting.n_qubits();
  if (counts.size() != (std::size_t{1} << n)) {
    throw DimensionMismatch("count table length " + std::to_string(counts.size()) +
                            " does not match " + std::to_string(n) + " qubits");
  }
  if (total <= 0) {
    throw OutOfRange("count record total must be positive");
  }
  std::int64_t sum = 0;
  for (std::int64_t c : counts) {
    if (c < 0) {
      throw OutOfRange("negative count");
    }
    sum += c;
  }
  if (sum != total) {
    throw OutOfRange("counts sum to " + std::to_string(sum) + ", total says " +
                     std::to_string(total));
  }
}

Eigen::VectorXd outcome_probabilities(const DensityMatrix& rho,
                                      const MeasurementSetting& setting) {
  if (setting.n_qubits() != rho.n_qubits()) {
    throw DimensionMismatch("setting names " + std::to_string(setting.n_qubits()) +
                            " qubits, state has " + std::to_string(rho.n_qubits()));
  }
  ComplexMatrix v = basis_rotation(setting.paulis[0]);
  for (int q = 1; q < setting.n_qubits(); ++q) {
    v = kron(v, basis_rotation(setting.paulis[q]));
  }
  const ComplexMatrix rotated = v.adjoint() * rho.mat() * v;
  Eigen::VectorXd probs(rho.dim());
  for (int b = 0; b < rho.dim(); ++b) {
    const double p = rotated(b, b).real();
    if (p < tol::psd_floor) {
      throw InvalidState("negative outcome probability " + std::to_string(p));
    }
    probs(b) = std::max(p, 0.0);
  }
  probs /= probs.sum();
  return probs;
}

CountRecord sample_counts(const MeasurementSetting& setting, const Eigen::VectorXd& probs,
                          std::int64_t shots, std::uint64_t seed) {
  if (shots <= 0) {
    throw OutOfRange("shots must be positive");
  }
  if (probs.size() != Eigen::Index{1} << setting.n_qubits()) {
    throw DimensionMismatch("probability vector does not match setting width");
  }
  Rng rng(seed);
  const auto drawn = rng.multinomial(static_cast<std::uint64_t>(shots), probs);
  std::vector<std::int64_t> counts(drawn.size());
  for (std::size_t i = 0; i < drawn.size(); ++i) {
    counts[i] = static_cast<std::int64_t>(drawn[i]);
  }
  return CountRecord{setting, std::move(counts), shots};
}

CountRecord measure(const DensityMatrix& rho, const MeasurementSetting& setting,
                    std::int64_t shots, std::uint64_t seed) {
  return sample_counts(setting, outcome_probabilities(rho, setting), shots, seed);
}

double parity_expectation(const CountRecord& record, const std::string& paulis) {
  record.check();
  const int n = record.setting.n_qubits();
  if (paulis.size() != static_cast<std::size_t>(n)) {
    throw DimensionMismatch("Pauli string width does not match record");
  }
  std::uint64_t mask = 0;
  for (int j = 0; j < n; ++j) {
    if (paulis[j] == 'I') {
      continue;
    }
    if (paulis[j] != record.setting.paulis[j]) {
      throw MissingSetting("record for " + record.setting.paulis +
                           " cannot estimate " + paulis);
    }
    mask |= std::uint64_t{1} << (n - 1 - j);
  }
  double sum = 0.0;
  for (std::size_t b = 0; b < record.counts.size(); ++b) {
    const double sign = (std::popcount(b & mask) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * static_cast<double>(record.counts[b]);
  }
  return sum / static_cast<double>(record.total);
}

std::vector<MeasurementSetting> witness_settings() {
  return {MeasurementSetting("XZXZ"), MeasurementSetting("YZYZ"),
          MeasurementSetting("ZZZZ")};
}

std::vector<MeasurementSetting> tomography_settings_2q() {
  std::vector<MeasurementSetting> settings;
  settings.reserve(9);
  for (char a : {'X', 'Y', 'Z'}) {
    for (char b : {'X', 'Y', 'Z'}) {
      settings.push_back(MeasurementSetting(std::string{a, b}));
    }
  }
  return settings;
}

WitnessEstimate witness_estimate(const std::vector<CountRecord>& records, int resamples,
                                 std::uint64_t seed) {
  const auto ordered = canonical_witness_records(records);
  const double value = witness_value(ordered);
  const double sigma = bootstrap_sigma(
      ordered, [](const std::vector<CountRecord>& r) { return witness_value(r); },
      resamples, seed);
  return WitnessEstimate{value, sigma};
}

DensityMatrix tomography_2q(const std::vector<CountRecord>& records) {
  const auto wanted = tomography_settings_2q();
  std::vector<const CountRecord*> by_setting(wanted.size(), nullptr);
  for (const auto& record : records) {
    for (std::size_t i = 0; i < wanted.size(); ++i) {
      if (record.setting.paulis == wanted[i].paulis) {
        if (by_setting[i] != nullptr) {
          throw MissingSetting("duplicate record for setting " + wanted[i].paulis);
        }
        record.check();
        by_setting[i] = &record;
      }
    }
  }
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    if (by_setting[i] == nullptr) {
      throw MissingSetting("no record for setting " + wanted[i].paulis);
    }
  }
  auto record_for = [&](const std::string& setting) -> const CountRecord& {
    for (std::size_t i = 0; i < wanted.size(); ++i) {
      if (wanted[i].paulis == setting) {
        return *by_setting[i];
      }
    }
    throw MissingSetting("no record for setting " + setting);
  };

  ComplexMatrix accum = ComplexMatrix::Zero(4, 4);
  const std::string letters = "IXYZ";
  for (char a : letters) {
    for (char b : letters) {
      const std::string paulis{a, b};
      std::string lookup = paulis;
      for (char& c : lookup) {
        if (c == 'I') {
          c = 'Z';
        }
      }
      const double e = parity_expectation(record_for(lookup), paulis);
      accum += (e / 4.0) * pauli_string_matrix(paulis);
    }
  }

  // Clip negative eigenvalues and renormalize: nearest valid state for the
  // small statistical violations linear inversion produces.
  const HermitianEig eig = hermitian_eig(accum);
  Eigen::VectorXd clipped = eig.values.cwiseMax(0.0);
  clipped /= clipped.sum();
  const ComplexMatrix projected = eig.vectors * clipped.asDiagonal() *
                                  eig.vectors.adjoint();
  return DensityMatrix((projected + projected.adjoint()) / 2.0);
}

double bootstrap_sigma(const std::vector<CountRecord>& records,
                       const std::function<double(const std::vector<CountRecord>&)>& statistic,
                       int resamples, std::uint64_t seed) {
  if (resamples < 100) {
    throw OutOfRange("bootstrap needs at least 100 resamples");
  }
  std::vector<Eigen::VectorXd> freqs;
  freqs.reserve(records.size());
  for (const auto& record : records) {
    record.check();
    Eigen::VectorXd f(record.counts.size());
    for (std::size_t b = 0; b < record.counts.size(); ++b) {
      f(b) = static_cast<double>(record.counts[b]) / static_cast<double>(record.total);
    }
    freqs.push_back(std::move(f));
  }

  std::vector<double> values;
  values.reserve(resamples);
  std::vector<CountRecord> resampled = records;
  for (int t = 0; t < resamples; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto drawn =
          rng.multinomial(static_cast<std::uint64_t>(records[i].total), freqs[i]);
      for (std::size_t b = 0; b < drawn.size(); ++b) {
        resampled[i].counts[b] = static_cast<std::int64_t>(drawn[b]);
      }
    }
    values.push_back(statistic(resampled));
  }

  double mean = 0.0;
  for (double v : values) {
    mean += v;
  }
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) {
    var += (v - mean) * (v - mean);
  }
  var /= static_cast<double>(values.size() - 1);
  return std::sqrt(var);
}

}  // namespace qne
