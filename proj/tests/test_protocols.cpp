#include "doctest.h"

#include <cmath>

#include <Eigen/SVD>

#include "qne/protocols.hpp"
#include "test_support.hpp"

using namespace qne;
using qtest::TestRng;

TEST_CASE("diagonal_input lays out the classical two-qubit mixture") {
  const DensityMatrix rho = diagonal_input(DiagonalInputParams{0.3, 0.8, 0.1});
  CHECK(rho.mat()(0, 0).real() == doctest::Approx(0.3 * 0.8));   // |00>
  CHECK(rho.mat()(2, 2).real() == doctest::Approx(0.3 * 0.2));   // |10>
  CHECK(rho.mat()(1, 1).real() == doctest::Approx(0.7 * 0.1));   // |01>
  CHECK(rho.mat()(3, 3).real() == doctest::Approx(0.7 * 0.9));   // |11>
  CHECK(qtest::max_abs_diff(rho.mat(), rho.mat().diagonal().asDiagonal()) == 0.0);

  CHECK_THROWS_AS(diagonal_input(DiagonalInputParams{1.2, 1.0, 0.0}), OutOfRange);
  CHECK_THROWS_AS((DiagonalInputParams{0.5, -0.1, 0.0}.check()), OutOfRange);
}

TEST_CASE("the noise block reproduces the closed-form single-qubit output") {
  TestRng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = rng.uniform();
    const double eta = rng.uniform();
    ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
    diag(0, 0) = x;
    diag(1, 1) = 1.0 - x;
    const DensityMatrix out = noise_block(eta).apply(DensityMatrix(diag), 0);
    CHECK(qtest::max_abs_diff(out.mat(), rho_prime_single(x, eta)) < 1e-14);
  }
  CHECK_THROWS_AS(noise_block(1.5), OutOfRange);
  CHECK_THROWS_AS(noise_block(0.5, Gate::cnot()), DimensionMismatch);
}

TEST_CASE("rho_prime_single carries the eta coherence and damped polarization") {
  const ComplexMatrix m = rho_prime_single(1.0, 0.36);
  CHECK(m(0, 1).real() == doctest::Approx(0.18));
  CHECK(m(0, 0).real() == doctest::Approx(0.5 * (1.0 + 0.8)));
  CHECK(m(1, 1).real() == doctest::Approx(0.5 * (1.0 - 0.8)));
}

TEST_CASE("two-qubit protocol yields N = eta/2 and the advertised output matrix") {
  for (int k = 0; k <= 20; ++k) {
    const double eta = k / 20.0;
    const ProtocolResult res = two_qubit_protocol(eta);
    CHECK(std::abs(res.negativity - eta / 2.0) < 1e-12);
    CHECK(!res.witness_expectation.has_value());

    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = 0.5;
    expected(3, 3) = 0.5;
    expected(0, 3) = eta / 2.0;
    expected(3, 0) = eta / 2.0;
    CHECK(qtest::max_abs_diff(res.rho_out.mat(), expected) < 1e-14);
  }
  CHECK_THROWS_AS(two_qubit_protocol(-0.01), OutOfRange);
}

TEST_CASE("a Hadamard attack erases two-qubit entanglement exactly") {
  for (int k = 0; k <= 10; ++k) {
    const double eta = k / 10.0;
    const ProtocolResult res = two_qubit_protocol(eta, Gate::hadamard());
    CHECK(res.negativity < 1e-12);
    CHECK(res.adversary_gates.size() == 1);
  }
}

TEST_CASE("four-qubit protocol: N = eta/2 and witness -eta/2 for ideal inputs") {
  for (double p : {0.25, 0.5, 0.75}) {
    for (int k = 0; k <= 10; ++k) {
      const double eta = k / 10.0;
      const ProtocolResult res =
          four_qubit_protocol(DiagonalInputParams{p, 1.0, 0.0}, eta);
      CHECK(std::abs(res.negativity - eta / 2.0) < 1e-12);
      REQUIRE(res.witness_expectation.has_value());
      CHECK(std::abs(*res.witness_expectation + eta / 2.0) < 1e-12);
    }
  }
}

TEST_CASE("four-qubit circuit equals CNOTs applied to the closed-form block state") {
  TestRng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const DiagonalInputParams params{rng.uniform(), rng.uniform(), rng.uniform()};
    const double eta = rng.uniform();

    const DensityMatrix pre =
        DensityMatrix(kron(rho_prime_ab(params, eta).mat(),
                           DensityMatrix::basis_state(2, 0).mat()));
    DensityMatrix expected = apply_gate(Gate::cnot(), pre, {0, 2});
    expected = apply_gate(Gate::cnot(), expected, {1, 3});

    const ProtocolResult res = four_qubit_protocol(params, eta);
    CHECK(qtest::max_abs_diff(res.rho_out.mat(), expected.mat()) < 1e-13);
  }
}

TEST_CASE("rho_prime_ab equals the mixture of closed-form branches") {
  TestRng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const DiagonalInputParams params{rng.uniform(), rng.uniform(), rng.uniform()};
    const double eta = rng.uniform();
    const DensityMatrix direct = rho_prime_ab(params, eta);

    // Circuit oracle: run the mixer-damping-mixer block on A of the diagonal
    // input and compare.
    const DensityMatrix circuit = noise_block(eta).apply(diagonal_input(params), 0);
    CHECK(qtest::max_abs_diff(direct.mat(), circuit.mat()) < 1e-13);
  }
}

TEST_CASE("analytic off-diagonal formulas equal post-CNOT negativity") {
  TestRng rng(44);
  const Bipartition cut1 = Bipartition::qubits(2, {0});
  const Bipartition cut2 = Bipartition::qubits(4, {0, 1});

  for (int trial = 0; trial < 50; ++trial) {
    // One-qubit input: N after CNOT equals |rho_01|.
    const DensityMatrix rho_a = rng.density(2);
    DensityMatrix joined = DensityMatrix(kron(rho_a.mat(), DensityMatrix::basis_state(1, 0).mat()));
    joined = apply_gate(Gate::cnot(), joined, {0, 1});
    CHECK(std::abs(negativity(joined, cut1) - analytic_negativity_offdiag(rho_a)) < 1e-10);

    // Two-qubit input: N across AB|CD after two CNOTs equals the sum of
    // upper-triangle magnitudes.
    const DensityMatrix rho_ab = rng.density(4);
    DensityMatrix big =
        DensityMatrix(kron(rho_ab.mat(), DensityMatrix::basis_state(2, 0).mat()));
    big = apply_gate(Gate::cnot(), big, {0, 2});
    big = apply_gate(Gate::cnot(), big, {1, 3});
    CHECK(std::abs(negativity(big, cut2) - analytic_negativity_offdiag(rho_ab)) < 1e-10);
  }

  CHECK_THROWS_AS(analytic_negativity_offdiag(DensityMatrix::maximally_mixed(3)),
                  UnsupportedDim);
}

TEST_CASE("commutator_deviation matches the direct operator norm") {
  TestRng rng(45);
  for (int trial = 0; trial < 200; ++trial) {
    const DiagonalInputParams params{rng.uniform(), rng.uniform(), rng.uniform()};
    const double eta = rng.uniform();
    const double dev = commutator_deviation(params, eta);
    CHECK(std::abs(dev - eta * std::sqrt(1.0 - eta) * std::abs(params.q - params.r)) <
          1e-12);

    // Independent route: largest singular value of the explicit commutator.
    const ComplexMatrix a = rho_prime_single(params.q, eta);
    const ComplexMatrix b = rho_prime_single(params.r, eta);
    const Eigen::JacobiSVD<ComplexMatrix> svd(a * b - b * a);
    CHECK(std::abs(dev - svd.singularValues()(0)) < 1e-13);
  }

  // Zero exactly when q = r (or the channel is trivial/complete).
  CHECK(commutator_deviation(DiagonalInputParams{0.5, 0.7, 0.7}, 0.5) < 1e-15);
  CHECK(commutator_deviation(DiagonalInputParams{0.5, 1.0, 0.0}, 0.0) < 1e-15);
  CHECK(commutator_deviation(DiagonalInputParams{0.5, 1.0, 0.0}, 1.0) < 1e-15);
}

TEST_CASE("adversary gates thread through the four-qubit protocol") {
  const ProtocolResult res = four_qubit_protocol(
      DiagonalInputParams{}, 0.7, Gate::hadamard(), Gate::identity());
  CHECK(res.adversary_gates.size() == 2);
  CHECK(res.eta == 0.7);
}
