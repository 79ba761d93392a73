#pragma once

#include <optional>
#include <vector>

#include "qne/entanglement_metrics.hpp"
#include "qne/quantum_objects.hpp"

namespace qne {

// Diagonal two-qubit input p*sigma^d_A (x) |0><0|_B + (1-p)*tau^d_A (x) |1><1|_B
// with sigma^d = q|0><0| + (1-q)|1><1| and tau^d = r|0><0| + (1-r)|1><1|.
struct DiagonalInputParams {
  double p = 0.5;
  double q = 1.0;
  double r = 0.0;

  void check() const;  // throws OutOfRange unless all lie in [0, 1]
};

struct ProtocolResult {
  DensityMatrix rho_out;
  double negativity;
  std::optional<double> witness_expectation;  // four-qubit runs only
  double eta;
  std::vector<Gate> adversary_gates;  // empty when no adversary acted
};

// The mixer-damping-mixer block; the mixer is a Hadamard in the ideal
// protocol and a beam-splitter unitary in the hardware model.
struct NoiseBlock {
  Gate mixer;
  KrausChannel damping;

  DensityMatrix apply(const DensityMatrix& rho, int target) const;
};

NoiseBlock noise_block(double eta);
NoiseBlock noise_block(double eta, Gate mixer);

// rho^d_AB as a validated two-qubit state.
DensityMatrix diagonal_input(const DiagonalInputParams& params);

// Qubits (A, C): start from I/2 (x) |0><0|, noise block on A, optional
// adversary gate on A, CNOT A->C; negativity across A|C.
ProtocolResult two_qubit_protocol(double eta, const std::optional<Gate>& eve = {});
ProtocolResult two_qubit_protocol(const Gate& mixer, double eta,
                                  const std::optional<Gate>& eve);

// Qubits (A, B, C, D): rho^d_AB (x) |00><00|_CD, noise block on A, optional
// adversary gates on A and B, CNOT A->C and CNOT B->D; negativity and
// witness expectation across AB|CD.
ProtocolResult four_qubit_protocol(const DiagonalInputParams& params, double eta,
                                   const std::optional<Gate>& eve_a = {},
                                   const std::optional<Gate>& eve_b = {});
ProtocolResult four_qubit_protocol(const Gate& mixer, const DiagonalInputParams& params,
                                   double eta, const std::optional<Gate>& eve_a,
                                   const std::optional<Gate>& eve_b);

// Negativity the CNOT stage will produce, read off the pre-CNOT state:
// |rho_01| for a single qubit, sum_{i<j}|rho_ij| for two qubits.
double analytic_negativity_offdiag(const DensityMatrix& rho_in);

// Closed form (I + eta*sigma_x + (2x-1)*sqrt(1-eta)*sigma_z) / 2.
ComplexMatrix rho_prime_single(double x, double eta);

// Two-qubit state after the noise block on A, from the closed form (no
// circuit simulation).
DensityMatrix rho_prime_ab(const DiagonalInputParams& params, double eta);

// Operator norm of [rho'_A(q), rho'_A(r)]; equals eta*sqrt(1-eta)*|q-r|.
// Nonzero exactly when the noise turns classical correlations quantum.
double commutator_deviation(const DiagonalInputParams& params, double eta);

}  // namespace qne
