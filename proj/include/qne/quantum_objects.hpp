#pragma once

#include <string>
#include <vector>

#include "qne/matrix_core.hpp"

namespace qne {

// Validated quantum state: Hermitian, unit trace, PSD within tolerance.
class DensityMatrix {
 public:
  // Throws InvalidState if any invariant fails; dim must be a power of two.
  explicit DensityMatrix(ComplexMatrix mat);

  const ComplexMatrix& mat() const { return mat_; }
  int n_qubits() const { return n_qubits_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  static DensityMatrix pure(const Eigen::VectorXcd& psi);
  static DensityMatrix basis_state(int n_qubits, int index);
  static DensityMatrix maximally_mixed(int n_qubits);

 private:
  ComplexMatrix mat_;
  int n_qubits_;
};

// Validated unitary acting on `arity` qubits.
class Gate {
 public:
  explicit Gate(ComplexMatrix mat);  // throws NotUnitary

  const ComplexMatrix& mat() const { return mat_; }
  int arity() const { return arity_; }

  static Gate identity(int arity = 1);
  static Gate hadamard();
  static Gate pauli_x();
  static Gate pauli_y();
  static Gate pauli_z();
  static Gate cnot();  // control = first (most significant) qubit

 private:
  ComplexMatrix mat_;
  int arity_;
};

// [[cos(t/2), -e^{il}sin(t/2)], [e^{ip}sin(t/2), e^{i(p+l)}cos(t/2)]];
// covers U(2) up to a global phase.
Gate su2_gate(double theta, double phi, double lam);

// Kraus channel with a trace-preservation certificate.  Operators whose
// largest entry is below 1e-14 are pruned at construction.
class KrausChannel {
 public:
  KrausChannel(std::vector<ComplexMatrix> ops, std::string label);

  const std::vector<ComplexMatrix>& ops() const { return ops_; }
  const std::string& label() const { return label_; }
  int dim() const { return static_cast<int>(ops_.front().rows()); }

 private:
  std::vector<ComplexMatrix> ops_;
  std::string label_;
};

// Damps toward |0>: A1 = |0><0| + sqrt(1-eta)|1><1|, A2 = sqrt(eta)|0><1|.
KrausChannel amplitude_damping(double eta);

KrausChannel identity_channel();

struct UnitalityReport {
  bool unital;
  double deviation;  // operator norm of sum_i A_i A_i^dag - I
};
UnitalityReport is_unital(const KrausChannel& ch, double tolerance = 1e-12);

// Embeds a k-qubit operator on the ordered target qubits of an n-qubit
// register (targets[0] is the operator's most significant qubit).
ComplexMatrix embed_operator(const ComplexMatrix& op, const std::vector<int>& targets,
                             int n_qubits);

DensityMatrix apply_gate(const Gate& g, const DensityMatrix& rho,
                         const std::vector<int>& targets);

// Single-qubit channel on `target`, Kronecker-padded with identities.
DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho, int target);

// I, X, Y, Z by letter.
ComplexMatrix pauli_matrix(char which);

}  // namespace qne
