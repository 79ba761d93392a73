#include "qne/matrix_core.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qne {

namespace {

// Mixed-radix digits of a flat index, most significant subsystem first.
void to_digits(int index, const std::vector<int>& dims, std::vector<int>& digits) {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

int from_digits(const std::vector<int>& digits, const std::vector<int>& dims) {
  int index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    index = index * dims[k] + digits[k];
  }
  return index;
}

void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionMismatch(std::string(what) + ": matrix must be square and nonempty");
  }
}

}  // namespace

Bipartition::Bipartition(std::vector<int> dims_, std::vector<int> cut_)
    : dims(std::move(dims_)), cut(std::move(cut_)) {
  if (dims.empty()) {
    throw DimensionMismatch("Bipartition: no subsystems");
  }
  for (int d : dims) {
    if (d < 1) {
      throw DimensionMismatch("Bipartition: subsystem dimension must be >= 1");
    }
  }
  std::sort(cut.begin(), cut.end());
  if (std::adjacent_find(cut.begin(), cut.end()) != cut.end()) {
    throw DuplicateTarget("Bipartition: repeated subsystem index in cut");
  }
  if (cut.empty() || cut.size() >= dims.size()) {
    throw DimensionMismatch("Bipartition: cut must be a nonempty proper subset");
  }
  for (int k : cut) {
    if (k < 0 || k >= static_cast<int>(dims.size())) {
      throw OutOfRange("Bipartition: cut index out of range");
    }
  }
}

int Bipartition::total_dim() const {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
}

bool Bipartition::in_cut(int subsystem) const {
  return std::binary_search(cut.begin(), cut.end(), subsystem);
}

Bipartition Bipartition::qubits(int n_qubits, std::vector<int> cut_) {
  return Bipartition(std::vector<int>(n_qubits, 2), std::move(cut_));
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tolerance;
}

void check_finite(const ComplexMatrix& m) {
  if (!m.allFinite()) {
    throw InvalidState("matrix has non-finite entries");
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors) {
  if (factors.size() == 0) {
    throw DimensionMismatch("kron: empty factor list");
  }
  auto it = factors.begin();
  ComplexMatrix out = *it;
  for (++it; it != factors.end(); ++it) {
    out = kron(out, *it);
  }
  return out;
}

HermitianEig hermitian_eig(const ComplexMatrix& a) {
  check_square(a, "hermitian_eig");
  check_finite(a);
  if (!is_hermitian(a)) {
    throw NotHermitian("hermitian_eig: input deviates from its adjoint beyond tolerance");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eig: eigensolver failed to converge");
  }
  return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Bipartition& part) {
  check_square(rho, "partial_transpose");
  if (rho.rows() != part.total_dim()) {
    throw DimensionMismatch("partial_transpose: matrix dim does not match bipartition");
  }
  const int n = static_cast<int>(part.dims.size());
  const int dim = static_cast<int>(rho.rows());
  ComplexMatrix out(dim, dim);
  std::vector<int> row(n), col(n);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      to_digits(i, part.dims, row);
      to_digits(j, part.dims, col);
      for (int k : part.cut) {
        std::swap(row[k], col[k]);
      }
      out(from_digits(row, part.dims), from_digits(col, part.dims)) = rho(i, j);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const Bipartition& part,
                            const std::vector<int>& keep) {
  return partial_trace(rho, part.dims, keep);
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  check_square(rho, "partial_trace");
  const int n = static_cast<int>(dims.size());
  int total = 1;
  for (int d : dims) total *= d;
  if (rho.rows() != total) {
    throw DimensionMismatch("partial_trace: matrix dim does not match subsystem dims");
  }
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (kept.empty()) {
    throw DimensionMismatch("partial_trace: keep set must be nonempty");
  }
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw DuplicateTarget("partial_trace: repeated subsystem in keep set");
  }
  for (int k : kept) {
    if (k < 0 || k >= n) {
      throw OutOfRange("partial_trace: keep index out of range");
    }
  }

  std::vector<int> traced;
  for (int k = 0; k < n; ++k) {
    if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);
  }
  int kept_dim = 1;
  for (int k : kept) kept_dim *= dims[k];
  int traced_dim = 1;
  for (int k : traced) traced_dim *= dims[k];

  std::vector<int> kept_dims(kept.size()), traced_dims(traced.size());
  for (std::size_t k = 0; k < kept.size(); ++k) kept_dims[k] = dims[kept[k]];
  for (std::size_t k = 0; k < traced.size(); ++k) traced_dims[k] = dims[traced[k]];

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  std::vector<int> kr(kept.size()), kc(kept.size()), td(traced.size()), full_r(n), full_c(n);
  for (int i = 0; i < kept_dim; ++i) {
    for (int j = 0; j < kept_dim; ++j) {
      to_digits(i, kept_dims, kr);
      to_digits(j, kept_dims, kc);
      Complex sum = 0.0;
      for (int t = 0; t < traced_dim; ++t) {
        to_digits(t, traced_dims, td);
        for (std::size_t k = 0; k < kept.size(); ++k) {
          full_r[kept[k]] = kr[k];
          full_c[kept[k]] = kc[k];
        }
        for (std::size_t k = 0; k < traced.size(); ++k) {
          full_r[traced[k]] = td[k];
          full_c[traced[k]] = td[k];
        }
        sum += rho(from_digits(full_r, dims), from_digits(full_c, dims));
      }
      out(i, j) = sum;
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& rho, const std::vector<int>& dims,
                                 const std::vector<int>& perm) {
  check_square(rho, "permute_subsystems");
  const int n = static_cast<int>(dims.size());
  int total = 1;
  for (int d : dims) total *= d;
  if (rho.rows() != total) {
    throw DimensionMismatch("permute_subsystems: matrix dim does not match subsystem dims");
  }
  if (perm.size() != dims.size()) {
    throw DimensionMismatch("permute_subsystems: permutation length mismatch");
  }
  std::vector<int> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n) throw OutOfRange("permute_subsystems: index out of range");
    if (seen[p]++) throw DuplicateTarget("permute_subsystems: repeated index");
  }

  std::vector<int> out_dims(n);
  for (int k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];

  ComplexMatrix out(total, total);
  std::vector<int> row(n), col(n), prow(n), pcol(n);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < total; ++j) {
      to_digits(i, dims, row);
      to_digits(j, dims, col);
      for (int k = 0; k < n; ++k) {
        prow[k] = row[perm[k]];
        pcol[k] = col[perm[k]];
      }
      out(from_digits(prow, out_dims), from_digits(pcol, out_dims)) = rho(i, j);
    }
  }
  return out;
}

}  // namespace qne
