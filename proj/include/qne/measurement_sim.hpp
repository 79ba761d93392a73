#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qne/entanglement_metrics.hpp"
#include "qne/quantum_objects.hpp"

namespace qne {

// One Pauli basis choice per qubit, leftmost = qubit 0.  Identity factors of
// an observable are not measured; they are marginalized out of a compatible
// record at estimation time.
struct MeasurementSetting {
  std::string paulis;

  explicit MeasurementSetting(std::string basis);
  int n_qubits() const { return static_cast<int>(paulis.size()); }
};

// Photon-count table for one setting.  Outcomes index the vector with qubit 0
// as the most significant bit; outcome bit 0 means the +1 eigenstate.
struct CountRecord {
  MeasurementSetting setting;
  std::vector<std::int64_t> counts;
  std::int64_t total;

  void check() const;
};

// Born-rule outcome distribution for a projective measurement in the
// setting's product eigenbasis.
Eigen::VectorXd outcome_probabilities(const DensityMatrix& rho,
                                      const MeasurementSetting& setting);

// Multinomial draw with fixed total, the experiment's Poisson counts
// conditioned on the number of detected events.
CountRecord sample_counts(const MeasurementSetting& setting, const Eigen::VectorXd& probs,
                          std::int64_t shots, std::uint64_t seed);

CountRecord measure(const DensityMatrix& rho, const MeasurementSetting& setting,
                    std::int64_t shots, std::uint64_t seed);

// Empirical expectation of a Pauli string from one record: parity-weighted
// frequencies over the string's non-identity positions.  The record's setting
// must match the string wherever the string is not 'I'.
double parity_expectation(const CountRecord& record, const std::string& paulis);

struct WitnessEstimate {
  double value;
  double sigma;
};

// The three settings that suffice for the four-qubit witness, in the order
// used to resolve each Pauli term: XZXZ, YZYZ, ZZZZ.
std::vector<MeasurementSetting> witness_settings();

// All nine two-qubit product settings, XX through ZZ.
std::vector<MeasurementSetting> tomography_settings_2q();

// Witness expectation from the three-setting records, with a bootstrap
// standard error.  Each Pauli term of the witness is estimated from the
// first compatible record in the witness_settings() order.
WitnessEstimate witness_estimate(const std::vector<CountRecord>& records,
                                 int resamples = 1000, std::uint64_t seed = 0);

// Linear-inversion state reconstruction from the nine two-qubit settings,
// projected to the nearest valid state by clipping negative eigenvalues and
// renormalizing.  Pauli strings containing 'I' are marginalized from the
// record whose setting has 'Z' in those slots.
DensityMatrix tomography_2q(const std::vector<CountRecord>& records);

// Standard deviation of a statistic over multinomial resamples of every
// record.  Resample t draws from Rng::stream(seed, t), so tasks can run
// concurrently and results are reproducible.
double bootstrap_sigma(const std::vector<CountRecord>& records,
                       const std::function<double(const std::vector<CountRecord>&)>& statistic,
                       int resamples, std::uint64_t seed);

}  // namespace qne
