#include "qne/protocols.hpp"

#include <cmath>
#include <utility>

namespace qne {

namespace {

void check_eta(double eta) {
  if (eta < 0.0 || eta > 1.0) {
    throw OutOfRange("eta must lie in [0, 1]");
  }
}

const WitnessOperator& witness_abcd() {
  static const WitnessOperator w = build_witness_abcd();
  return w;
}

}  // namespace

void DiagonalInputParams::check() const {
  for (double v : {p, q, r}) {
    if (v < 0.0 || v > 1.0) {
      throw OutOfRange("DiagonalInputParams: p, q, r must lie in [0, 1]");
    }
  }
}

DensityMatrix NoiseBlock::apply(const DensityMatrix& rho, int target) const {
  DensityMatrix out = apply_gate(mixer, rho, {target});
  out = apply_channel(damping, out, target);
  return apply_gate(mixer, out, {target});
}

NoiseBlock noise_block(double eta) { return noise_block(eta, Gate::hadamard()); }

NoiseBlock noise_block(double eta, Gate mixer) {
  check_eta(eta);
  if (mixer.arity() != 1) {
    throw DimensionMismatch("noise_block: mixer must be a single-qubit gate");
  }
  return NoiseBlock{std::move(mixer), amplitude_damping(eta)};
}

DensityMatrix diagonal_input(const DiagonalInputParams& params) {
  params.check();
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = params.p * params.q;              // |00>
  m(2, 2) = params.p * (1.0 - params.q);      // |10>
  m(1, 1) = (1.0 - params.p) * params.r;      // |01>
  m(3, 3) = (1.0 - params.p) * (1.0 - params.r);  // |11>
  return DensityMatrix(std::move(m));
}

ProtocolResult two_qubit_protocol(double eta, const std::optional<Gate>& eve) {
  return two_qubit_protocol(Gate::hadamard(), eta, eve);
}

ProtocolResult two_qubit_protocol(const Gate& mixer, double eta,
                                  const std::optional<Gate>& eve) {
  check_eta(eta);
  const NoiseBlock block = noise_block(eta, mixer);

  DensityMatrix rho = DensityMatrix(
      kron(ComplexMatrix::Identity(2, 2) / 2.0, DensityMatrix::basis_state(1, 0).mat()));
  rho = block.apply(rho, 0);
  std::vector<Gate> adversary;
  if (eve) {
    rho = apply_gate(*eve, rho, {0});
    adversary.push_back(*eve);
  }
  rho = apply_gate(Gate::cnot(), rho, {0, 1});

  const double neg = negativity(rho, Bipartition::qubits(2, {0}));
  return ProtocolResult{std::move(rho), neg, std::nullopt, eta, std::move(adversary)};
}

ProtocolResult four_qubit_protocol(const DiagonalInputParams& params, double eta,
                                   const std::optional<Gate>& eve_a,
                                   const std::optional<Gate>& eve_b) {
  return four_qubit_protocol(Gate::hadamard(), params, eta, eve_a, eve_b);
}

ProtocolResult four_qubit_protocol(const Gate& mixer, const DiagonalInputParams& params,
                                   double eta, const std::optional<Gate>& eve_a,
                                   const std::optional<Gate>& eve_b) {
  check_eta(eta);
  const NoiseBlock block = noise_block(eta, mixer);

  const ComplexMatrix ancillas = DensityMatrix::basis_state(2, 0).mat();  // |00><00|_CD
  DensityMatrix rho = DensityMatrix(kron(diagonal_input(params).mat(), ancillas));
  rho = block.apply(rho, 0);
  std::vector<Gate> adversary;
  if (eve_a) {
    rho = apply_gate(*eve_a, rho, {0});
    adversary.push_back(*eve_a);
  }
  if (eve_b) {
    rho = apply_gate(*eve_b, rho, {1});
    adversary.push_back(*eve_b);
  }
  rho = apply_gate(Gate::cnot(), rho, {0, 2});
  rho = apply_gate(Gate::cnot(), rho, {1, 3});

  const double neg = negativity(rho, Bipartition::qubits(4, {0, 1}));
  const double wexp = expectation(witness_abcd(), rho);
  return ProtocolResult{std::move(rho), neg, wexp, eta, std::move(adversary)};
}

double analytic_negativity_offdiag(const DensityMatrix& rho_in) {
  if (rho_in.dim() == 2) {
    return std::abs(rho_in.mat()(0, 1));
  }
  if (rho_in.dim() == 4) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        sum += std::abs(rho_in.mat()(i, j));
      }
    }
    return sum;
  }
  throw UnsupportedDim("analytic_negativity_offdiag: expected a 1- or 2-qubit state");
}

ComplexMatrix rho_prime_single(double x, double eta) {
  check_eta(eta);
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m += eta * pauli_matrix('X');
  m += (2.0 * x - 1.0) * std::sqrt(1.0 - eta) * pauli_matrix('Z');
  return 0.5 * m;
}

DensityMatrix rho_prime_ab(const DiagonalInputParams& params, double eta) {
  params.check();
  check_eta(eta);
  ComplexMatrix ket0 = ComplexMatrix::Zero(2, 2);
  ket0(0, 0) = 1.0;
  ComplexMatrix ket1 = ComplexMatrix::Zero(2, 2);
  ket1(1, 1) = 1.0;
  const ComplexMatrix m = params.p * kron(rho_prime_single(params.q, eta), ket0) +
                          (1.0 - params.p) * kron(rho_prime_single(params.r, eta), ket1);
  return DensityMatrix(m);
}

double commutator_deviation(const DiagonalInputParams& params, double eta) {
  params.check();
  check_eta(eta);
  const ComplexMatrix a = rho_prime_single(params.q, eta);
  const ComplexMatrix b = rho_prime_single(params.r, eta);
  const ComplexMatrix comm = a * b - b * a;

  // The direct commutator must reproduce i*eta*sqrt(1-eta)*(q-r)*sigma_y.
  const ComplexMatrix closed = Complex(0.0, 1.0) * eta * std::sqrt(1.0 - eta) *
                               (params.q - params.r) * pauli_matrix('Y');
  if (max_abs(comm - closed) > 1e-12) {
    throw Error("commutator_deviation: direct commutator drifted from the closed form");
  }

  Eigen::JacobiSVD<ComplexMatrix> svd(comm);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

}  // namespace qne
