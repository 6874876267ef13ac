#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qcatn {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense tensor with an ordered list of legs. Storage is row-major in the leg
/// order: leg 0 is the most significant index.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> dims);
  Tensor(std::vector<int> dims, std::vector<cplx> data);

  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  long size() const { return static_cast<long>(data_.size()); }
  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  cplx& at(const std::vector<int>& idx);
  const cplx& at(const std::vector<int>& idx) const;
  long flat_index(const std::vector<int>& idx) const;

  /// New tensor whose leg k is this tensor's leg perm[k].
  Tensor permuted(const std::vector<int>& perm) const;

  /// Merge legs into a matrix: legs in `row_legs` (in the given order) form
  /// the row index, the remaining legs (in their current order) the columns.
  Matrix matricize(const std::vector<int>& row_legs) const;

  static Tensor from_matrix(const Matrix& m, const std::vector<int>& row_dims,
                            const std::vector<int>& col_dims);
  static Tensor from_vector(const Vector& v, const std::vector<int>& dims);
  Vector to_vector() const;

  double norm() const;

 private:
  std::vector<int> dims_;
  std::vector<cplx> data_;
};

/// Contract legs_a of A with legs_b of B (pairwise, matching dimensions).
/// Result legs: A's free legs in order, then B's free legs in order.
Tensor contract(const Tensor& A, const std::vector<int>& legs_a,
                const Tensor& B, const std::vector<int>& legs_b);

/// Permute the tensor factors of a vector living on a product space.
/// dims are the current factor dimensions; perm[k] names which current factor
/// becomes the k-th factor of the result.
Vector permute_vector_factors(const Vector& v, const std::vector<int>& dims,
                              const std::vector<int>& perm);

}  // namespace qcatn
