#pragma once

#include <Eigen/Dense>
#include <complex>
#include <initializer_list>
#include <vector>

#include "qne/errors.hpp"

namespace qne {

using Complex = std::complex<double>;

// Universal dense carrier for states, gates, observables.
using ComplexMatrix = Eigen::MatrixXcd;

// Subsystem ordering convention, used everywhere in this library:
// subsystems are listed left to right (A, B, C, D, ...), and the leftmost
// subsystem is the most significant digit of the flat basis index.  For n
// qubits the basis state |a b c d> has index a*8 + b*4 + c*2 + d, i.e.
// kron(M_A, M_B) puts A on the most significant side.
struct Bipartition {
  std::vector<int> dims;  // subsystem dimensions, left to right
  std::vector<int> cut;   // sorted indices of the subsystems forming the first side

  Bipartition(std::vector<int> dims_, std::vector<int> cut_);

  int total_dim() const;
  bool in_cut(int subsystem) const;

  static Bipartition qubits(int n_qubits, std::vector<int> cut_);
};

namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double trace_one = 1e-10;
inline constexpr double psd_floor = -1e-10;       // smallest admissible eigenvalue
inline constexpr double unitarity = 1e-10;
inline constexpr double trace_preserving = 1e-10;
inline constexpr double negativity_floor = -1e-10;  // eigenvalues above this count as zero
}  // namespace tol

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::hermiticity);
void check_finite(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors);

struct HermitianEig {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;   // orthonormal columns, same order as values
};

// Throws NotHermitian if max|a - a^dag| exceeds the hermiticity tolerance.
HermitianEig hermitian_eig(const ComplexMatrix& a);

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Bipartition& part);

// Traces out every subsystem not listed in `keep`; `keep` indices refer to
// part.dims.  The bipartition cut plays no role here, only the dims do.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const Bipartition& part,
                            const std::vector<int>& keep);
ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep);

// Reorders subsystems: position k of the output holds old subsystem perm[k].
ComplexMatrix permute_subsystems(const ComplexMatrix& rho, const std::vector<int>& dims,
                                 const std::vector<int>& perm);

}  // namespace qne
