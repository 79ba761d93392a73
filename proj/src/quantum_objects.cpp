#include "qne/quantum_objects.hpp"

#include <cmath>
#include <utility>

namespace qne {

namespace {

int qubit_count_for_dim(Eigen::Index dim, const char* what) {
  int n = 0;
  Eigen::Index d = dim;
  while (d > 1 && d % 2 == 0) {
    d /= 2;
    ++n;
  }
  if (d != 1 || n < 1) {
    throw DimensionMismatch(std::string(what) + ": dimension must be a power of two, got " +
                            std::to_string(dim));
  }
  return n;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols()) {
    throw DimensionMismatch("DensityMatrix: matrix must be square");
  }
  n_qubits_ = qubit_count_for_dim(mat_.rows(), "DensityMatrix");
  check_finite(mat_);
  if (!is_hermitian(mat_)) {
    throw InvalidState("DensityMatrix: not Hermitian within tolerance");
  }
  const double tr_err = std::abs(mat_.trace() - Complex(1.0, 0.0));
  if (tr_err > tol::trace_one) {
    throw InvalidState("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_err));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mat_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("DensityMatrix: eigensolver failed");
  }
  if (solver.eigenvalues()(0) < tol::psd_floor) {
    throw InvalidState("DensityMatrix: negative eigenvalue " +
                       std::to_string(solver.eigenvalues()(0)));
  }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (norm < 1e-14) {
    throw InvalidState("DensityMatrix::pure: zero vector");
  }
  Eigen::VectorXcd v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::basis_state(int n_qubits, int index) {
  const int dim = 1 << n_qubits;
  if (index < 0 || index >= dim) {
    throw OutOfRange("DensityMatrix::basis_state: index out of range");
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const int dim = 1 << n_qubits;
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

Gate::Gate(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols()) {
    throw DimensionMismatch("Gate: matrix must be square");
  }
  arity_ = qubit_count_for_dim(mat_.rows(), "Gate");
  check_finite(mat_);
  const ComplexMatrix gram = mat_.adjoint() * mat_;
  if (max_abs(gram - ComplexMatrix::Identity(mat_.rows(), mat_.cols())) > tol::unitarity) {
    throw NotUnitary("Gate: matrix is not unitary within tolerance");
  }
}

Gate Gate::identity(int arity) {
  const int dim = 1 << arity;
  return Gate(ComplexMatrix::Identity(dim, dim));
}

Gate Gate::hadamard() {
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return Gate(h);
}

Gate Gate::pauli_x() { return Gate(pauli_matrix('X')); }
Gate Gate::pauli_y() { return Gate(pauli_matrix('Y')); }
Gate Gate::pauli_z() { return Gate(pauli_matrix('Z')); }

Gate Gate::cnot() {
  ComplexMatrix c = ComplexMatrix::Zero(4, 4);
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  c(2, 3) = 1.0;
  c(3, 2) = 1.0;
  return Gate(c);
}

Gate su2_gate(double theta, double phi, double lam) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  ComplexMatrix u(2, 2);
  u(0, 0) = c;
  u(0, 1) = -std::exp(Complex(0.0, lam)) * s;
  u(1, 0) = std::exp(Complex(0.0, phi)) * s;
  u(1, 1) = std::exp(Complex(0.0, phi + lam)) * c;
  return Gate(u);
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops, std::string label)
    : label_(std::move(label)) {
  if (ops.empty()) {
    throw InvalidChannel("KrausChannel: empty operator list");
  }
  const Eigen::Index dim = ops.front().rows();
  for (const auto& op : ops) {
    if (op.rows() != dim || op.cols() != dim) {
      throw DimensionMismatch("KrausChannel: operators must share one square dimension");
    }
    check_finite(op);
    if (max_abs(op) > 1e-14) {
      ops_.push_back(op);
    }
  }
  if (ops_.empty()) {
    throw InvalidChannel("KrausChannel: all operators are zero");
  }
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& op : ops_) {
    sum += op.adjoint() * op;
  }
  if (max_abs(sum - ComplexMatrix::Identity(dim, dim)) > tol::trace_preserving) {
    throw InvalidChannel("KrausChannel '" + label_ + "': not trace preserving");
  }
}

KrausChannel amplitude_damping(double eta) {
  if (eta < 0.0 || eta > 1.0) {
    throw OutOfRange("amplitude_damping: eta must lie in [0, 1]");
  }
  ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
  a1(0, 0) = 1.0;
  a1(1, 1) = std::sqrt(1.0 - eta);
  ComplexMatrix a2 = ComplexMatrix::Zero(2, 2);
  a2(0, 1) = std::sqrt(eta);
  return KrausChannel({a1, a2}, "amplitude_damping(" + std::to_string(eta) + ")");
}

KrausChannel identity_channel() {
  return KrausChannel({ComplexMatrix::Identity(2, 2)}, "identity");
}

UnitalityReport is_unital(const KrausChannel& ch, double tolerance) {
  const int dim = ch.dim();
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& op : ch.ops()) {
    sum += op * op.adjoint();
  }
  const ComplexMatrix dev = sum - ComplexMatrix::Identity(dim, dim);
  // dev is Hermitian, so the operator norm is the largest |eigenvalue|.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(dev, Eigen::EigenvaluesOnly);
  const double norm = solver.eigenvalues().cwiseAbs().maxCoeff();
  return UnitalityReport{norm < tolerance, norm};
}

ComplexMatrix embed_operator(const ComplexMatrix& op, const std::vector<int>& targets,
                             int n_qubits) {
  if (op.rows() != op.cols()) {
    throw DimensionMismatch("embed_operator: operator must be square");
  }
  const int k = qubit_count_for_dim(op.rows(), "embed_operator");
  if (static_cast<int>(targets.size()) != k) {
    throw DimensionMismatch("embed_operator: target count does not match operator arity");
  }
  std::vector<int> seen(n_qubits, 0);
  for (int t : targets) {
    if (t < 0 || t >= n_qubits) {
      throw OutOfRange("embed_operator: target qubit out of range");
    }
    if (seen[t]++) {
      throw DuplicateTarget("embed_operator: repeated target qubit");
    }
  }

  const int dim = 1 << n_qubits;
  // Bit of qubit q in a flat index (qubit 0 is most significant).
  auto bit_pos = [n_qubits](int q) { return n_qubits - 1 - q; };
  int spectator_mask = dim - 1;
  for (int t : targets) {
    spectator_mask &= ~(1 << bit_pos(t));
  }

  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int gr = 0; gr < dim; ++gr) {
    for (int gc = 0; gc < dim; ++gc) {
      if ((gr & spectator_mask) != (gc & spectator_mask)) continue;
      int lr = 0;
      int lc = 0;
      for (int q = 0; q < k; ++q) {
        const int pos = bit_pos(targets[q]);
        lr = (lr << 1) | ((gr >> pos) & 1);
        lc = (lc << 1) | ((gc >> pos) & 1);
      }
      out(gr, gc) = op(lr, lc);
    }
  }
  return out;
}

DensityMatrix apply_gate(const Gate& g, const DensityMatrix& rho,
                         const std::vector<int>& targets) {
  const ComplexMatrix u = embed_operator(g.mat(), targets, rho.n_qubits());
  return DensityMatrix(u * rho.mat() * u.adjoint());
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho, int target) {
  if (ch.dim() != 2) {
    throw DimensionMismatch("apply_channel: only single-qubit channels are supported");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& op : ch.ops()) {
    const ComplexMatrix embedded = embed_operator(op, {target}, rho.n_qubits());
    out += embedded * rho.mat() * embedded.adjoint();
  }
  return DensityMatrix(std::move(out));
}

ComplexMatrix pauli_matrix(char which) {
  ComplexMatrix m(2, 2);
  switch (which) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      throw OutOfRange(std::string("pauli_matrix: unknown label '") + which + "'");
  }
  return m;
}

}  // namespace qne
