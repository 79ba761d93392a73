#include "qne/entanglement_metrics.hpp"

#include <cmath>
#include <utility>

namespace qne {

namespace {

constexpr double kDecomposeDropTol = 1e-13;
constexpr double kRoundTripTol = 1e-12;
constexpr double kRealTol = 1e-10;

void next_pauli_string(std::string& s, bool& done) {
  // Lexicographic successor over {I,X,Y,Z}^n.
  static const char order[] = {'I', 'X', 'Y', 'Z'};
  for (int k = static_cast<int>(s.size()) - 1; k >= 0; --k) {
    int idx = std::string("IXYZ").find(s[k]);
    if (idx < 3) {
      s[k] = order[idx + 1];
      for (std::size_t j = k + 1; j < s.size(); ++j) s[j] = 'I';
      return;
    }
  }
  done = true;
}

}  // namespace

ComplexMatrix pauli_string_matrix(const std::string& paulis) {
  if (paulis.empty()) {
    throw DimensionMismatch("pauli_string_matrix: empty string");
  }
  ComplexMatrix out = pauli_matrix(paulis[0]);
  for (std::size_t k = 1; k < paulis.size(); ++k) {
    out = kron(out, pauli_matrix(paulis[k]));
  }
  return out;
}

std::vector<PauliTerm> pauli_decompose(const ComplexMatrix& herm) {
  if (herm.rows() != herm.cols()) {
    throw DimensionMismatch("pauli_decompose: matrix must be square");
  }
  int n = 0;
  for (Eigen::Index d = herm.rows(); d > 1; d /= 2) {
    if (d % 2 != 0) throw DimensionMismatch("pauli_decompose: dim must be a power of two");
    ++n;
  }
  if (!is_hermitian(herm)) {
    throw NotHermitian("pauli_decompose: input is not Hermitian");
  }
  const double dim = static_cast<double>(herm.rows());
  std::vector<PauliTerm> terms;
  std::string s(n, 'I');
  bool done = false;
  while (!done) {
    const Complex c = (pauli_string_matrix(s) * herm).trace() / dim;
    if (std::abs(c) > kDecomposeDropTol) {
      terms.push_back(PauliTerm{c.real(), s});
    }
    next_pauli_string(s, done);
  }
  return terms;
}

WitnessOperator::WitnessOperator(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw DimensionMismatch("WitnessOperator: empty term list");
  }
  n_qubits_ = static_cast<int>(terms_.front().paulis.size());
  const int dim = 1 << n_qubits_;
  mat_ = ComplexMatrix::Zero(dim, dim);
  for (const auto& term : terms_) {
    if (static_cast<int>(term.paulis.size()) != n_qubits_) {
      throw DimensionMismatch("WitnessOperator: inconsistent Pauli string lengths");
    }
    mat_ += term.coeff * pauli_string_matrix(term.paulis);
  }
  validate();
}

WitnessOperator::WitnessOperator(const ComplexMatrix& mat)
    : mat_(mat), terms_(pauli_decompose(mat)) {
  n_qubits_ = static_cast<int>(terms_.front().paulis.size());
  validate();
}

void WitnessOperator::validate() const {
  if (!is_hermitian(mat_)) {
    throw NotHermitian("WitnessOperator: matrix is not Hermitian");
  }
  ComplexMatrix rebuilt = ComplexMatrix::Zero(mat_.rows(), mat_.cols());
  for (const auto& term : terms_) {
    rebuilt += term.coeff * pauli_string_matrix(term.paulis);
  }
  if (max_abs(rebuilt - mat_) > kRoundTripTol) {
    throw Error("WitnessOperator: Pauli decomposition does not reproduce the matrix");
  }
}

double negativity(const DensityMatrix& rho, const Bipartition& part) {
  const ComplexMatrix pt = partial_transpose(rho.mat(), part);
  const HermitianEig eig = hermitian_eig(pt);
  double total = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) < tol::negativity_floor) {
      total += -eig.values(i);
    }
  }
  return total;
}

WitnessOperator build_witness_abcd() {
  // (II - XX + YY - ZZ)_{AC} (x) (II + ZZ)_{BD} / 8, reordered to ABCD.
  const double c = 1.0 / 8.0;
  std::vector<PauliTerm> terms = {
      {c, "IIII"},  {c, "IZIZ"},  {-c, "XIXI"}, {-c, "XZXZ"},
      {c, "YIYI"},  {c, "YZYZ"},  {-c, "ZIZI"}, {-c, "ZZZZ"},
  };
  return WitnessOperator(std::move(terms));
}

WitnessOperator witness_from_negative_subspace(const DensityMatrix& rho,
                                               const Bipartition& part) {
  const ComplexMatrix pt = partial_transpose(rho.mat(), part);
  const HermitianEig eig = hermitian_eig(pt);
  ComplexMatrix projector = ComplexMatrix::Zero(rho.dim(), rho.dim());
  int count = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) < tol::negativity_floor) {
      const Eigen::VectorXcd v = eig.vectors.col(i);
      projector += v * v.adjoint();
      ++count;
    }
  }
  if (count == 0) {
    throw NoNegativeEigenvalues(
        "witness_from_negative_subspace: partial transpose is PSD across this cut");
  }
  return WitnessOperator(partial_transpose(projector, part));
}

double expectation(const WitnessOperator& op, const DensityMatrix& rho) {
  if (op.mat().rows() != rho.dim()) {
    throw DimensionMismatch("expectation: operator and state dims differ");
  }
  const Complex t = (op.mat() * rho.mat()).trace();
  if (std::abs(t.imag()) > kRealTol) {
    throw NonrealExpectation("expectation: trace has imaginary part " +
                             std::to_string(t.imag()));
  }
  return t.real();
}

}  // namespace qne
