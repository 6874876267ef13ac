#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qcatn/tensor.hpp"

namespace qcatn {

struct EighResult {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
};

/// Hermitian eigendecomposition. Throws if the input is not Hermitian within
/// tol (relative Frobenius).
EighResult eigh(const Matrix& m, double tol = 1e-9);

/// Largest singular value.
double op_norm_inf(const Matrix& m);

/// All singular values, descending.
std::vector<double> singular_values(const Matrix& m);

/// Extremal eigenvalues (min, max) of a Hermitian matrix. Uses dense eigh up
/// to `dense_switch`, Lanczos with full reorthogonalization above it.
std::pair<double, double> extremal_eigenvalues_hermitian(
    const Matrix& m, long dense_switch = 1024, std::uint64_t seed = 0x9e3779b97f4a7c15ull);

double min_eigenvalue_hermitian(const Matrix& m);
double max_eigenvalue_hermitian(const Matrix& m);

/// Largest `k` eigenvalues of a Hermitian PSD-ish matrix, descending; same
/// dense/Lanczos switch as above.
std::vector<double> top_eigenvalues_hermitian(const Matrix& m, int k);

/// Thin SVD with truncation: keep singular values > threshold (absolute).
struct ThinSvd {
  Matrix u;
  std::vector<double> s;
  Matrix vdag;  // V†, rank rows
};
ThinSvd svd_truncated(const Matrix& m, double threshold);

}  // namespace qcatn
