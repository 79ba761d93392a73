#pragma once

#include <string>
#include <vector>

#include "qne/quantum_objects.hpp"

namespace qne {

struct PauliTerm {
  double coeff;
  std::string paulis;  // one of I,X,Y,Z per qubit, leftmost = qubit 0
};

ComplexMatrix pauli_string_matrix(const std::string& paulis);

// Full Pauli-basis decomposition of a Hermitian matrix; coefficients below
// 1e-13 in magnitude are dropped.
std::vector<PauliTerm> pauli_decompose(const ComplexMatrix& herm);

// Hermitian observable carrying its own Pauli decomposition, so measurement
// planning can read off the required settings.
class WitnessOperator {
 public:
  explicit WitnessOperator(std::vector<PauliTerm> terms);
  explicit WitnessOperator(const ComplexMatrix& mat);

  const ComplexMatrix& mat() const { return mat_; }
  const std::vector<PauliTerm>& pauli_terms() const { return terms_; }
  int n_qubits() const { return n_qubits_; }

 private:
  void validate() const;

  ComplexMatrix mat_;
  std::vector<PauliTerm> terms_;
  int n_qubits_;
};

// Sum of |negative eigenvalues| of the partial transpose.  Eigenvalues in
// (negativity_floor, 0) are treated as zero so the noiseless case reports
// exactly no entanglement.  N = 0 certifies separability only on 2x2 and
// 2x3 splits; on larger cuts it is reported as-is without that claim.
double negativity(const DensityMatrix& rho, const Bipartition& part);

// The fixed four-qubit witness for the AB|CD split:
// 1/8 (II - XX + YY - ZZ)_{AC} (x) (II + ZZ)_{BD), expressed over the ABCD
// qubit order.  <W> >= 0 on every product state across AB|CD, and -<W>
// lower-bounds the negativity.
WitnessOperator build_witness_abcd();

// Partial transpose (over part.cut) of the projector onto the negative
// eigenspace of rho^{T_cut}.  Its expectation on rho equals the sum of the
// negative eigenvalues, i.e. -negativity(rho, part).
WitnessOperator witness_from_negative_subspace(const DensityMatrix& rho,
                                               const Bipartition& part);

// Re(tr(op * rho)); throws NonrealExpectation if the imaginary part of the
// trace exceeds 1e-10.
double expectation(const WitnessOperator& op, const DensityMatrix& rho);

}  // namespace qne
