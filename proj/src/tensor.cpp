#include "qcatn/tensor.hpp"

#include <numeric>
#include <stdexcept>

namespace qcatn {

namespace {

std::vector<long> make_strides(const std::vector<int>& dims) {
  std::vector<long> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    strides[k] = strides[k + 1] * dims[k + 1];
  return strides;
}

long total_size(const std::vector<int>& dims) {
  long n = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("tensor: leg dimension must be positive");
    n *= d;
  }
  return n;
}

}  // namespace

Tensor::Tensor(std::vector<int> dims)
    : dims_(std::move(dims)), data_(total_size(dims_), cplx(0, 0)) {}

Tensor::Tensor(std::vector<int> dims, std::vector<cplx> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  if (static_cast<long>(data_.size()) != total_size(dims_))
    throw std::invalid_argument("tensor: data size does not match dimensions");
}

long Tensor::flat_index(const std::vector<int>& idx) const {
  if (idx.size() != dims_.size())
    throw std::invalid_argument("tensor: index rank mismatch");
  long flat = 0;
  for (size_t k = 0; k < dims_.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= dims_[k])
      throw std::out_of_range("tensor: index out of range");
    flat = flat * dims_[k] + idx[k];
  }
  return flat;
}

cplx& Tensor::at(const std::vector<int>& idx) { return data_[flat_index(idx)]; }
const cplx& Tensor::at(const std::vector<int>& idx) const {
  return data_[flat_index(idx)];
}

Tensor Tensor::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != rank())
    throw std::invalid_argument("tensor: permutation rank mismatch");
  std::vector<int> new_dims(rank());
  for (int k = 0; k < rank(); ++k) new_dims[k] = dims_[perm[k]];

  Tensor out(new_dims);
  const auto old_strides = make_strides(dims_);
  std::vector<long> stride_of_new_leg(rank());
  for (int k = 0; k < rank(); ++k) stride_of_new_leg[k] = old_strides[perm[k]];

  std::vector<int> idx(rank(), 0);
  const long n = size();
  for (long flat_new = 0; flat_new < n; ++flat_new) {
    long flat_old = 0;
    for (int k = 0; k < rank(); ++k) flat_old += idx[k] * stride_of_new_leg[k];
    out.data_[flat_new] = data_[flat_old];
    for (int k = rank() - 1; k >= 0; --k) {
      if (++idx[k] < new_dims[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

Matrix Tensor::matricize(const std::vector<int>& row_legs) const {
  std::vector<char> in_rows(rank(), 0);
  for (int l : row_legs) in_rows[l] = 1;
  std::vector<int> perm = row_legs;
  for (int k = 0; k < rank(); ++k)
    if (!in_rows[k]) perm.push_back(k);
  Tensor p = permuted(perm);

  long rows = 1;
  for (int l : row_legs) rows *= dims_[l];
  long cols = p.size() / std::max<long>(rows, 1);
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m(i, j) = p.data_[i * cols + j];
  return m;
}

Tensor Tensor::from_matrix(const Matrix& m, const std::vector<int>& row_dims,
                           const std::vector<int>& col_dims) {
  std::vector<int> dims = row_dims;
  dims.insert(dims.end(), col_dims.begin(), col_dims.end());
  Tensor out(dims);
  const long cols = m.cols();
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < cols; ++j) out.data_[i * cols + j] = m(i, j);
  return out;
}

Tensor Tensor::from_vector(const Vector& v, const std::vector<int>& dims) {
  Tensor out(dims);
  if (v.size() != out.size())
    throw std::invalid_argument("tensor: vector size does not match dimensions");
  for (long i = 0; i < v.size(); ++i) out.data_[i] = v(i);
  return out;
}

Vector Tensor::to_vector() const {
  Vector v(size());
  for (long i = 0; i < size(); ++i) v(i) = data_[i];
  return v;
}

double Tensor::norm() const {
  double s = 0;
  for (const cplx& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

Tensor contract(const Tensor& A, const std::vector<int>& legs_a,
                const Tensor& B, const std::vector<int>& legs_b) {
  if (legs_a.size() != legs_b.size())
    throw std::invalid_argument("contract: mismatched contraction leg counts");
  for (size_t k = 0; k < legs_a.size(); ++k)
    if (A.dims()[legs_a[k]] != B.dims()[legs_b[k]])
      throw std::invalid_argument("contract: leg dimension mismatch");

  std::vector<char> used_a(A.rank(), 0), used_b(B.rank(), 0);
  for (int l : legs_a) used_a[l] = 1;
  for (int l : legs_b) used_b[l] = 1;
  std::vector<int> free_a, free_b;
  for (int k = 0; k < A.rank(); ++k)
    if (!used_a[k]) free_a.push_back(k);
  for (int k = 0; k < B.rank(); ++k)
    if (!used_b[k]) free_b.push_back(k);

  // A as (free × contracted), B as (contracted × free), then one GEMM.
  Matrix ma = A.matricize(free_a);
  Matrix mb = B.matricize(legs_b);
  Matrix mc = ma * mb;

  std::vector<int> out_dims;
  for (int l : free_a) out_dims.push_back(A.dims()[l]);
  for (int l : free_b) out_dims.push_back(B.dims()[l]);
  if (out_dims.empty()) {
    Tensor scalar(std::vector<int>{1});
    scalar.data()[0] = mc(0, 0);
    return scalar;
  }
  std::vector<int> row_dims, col_dims;
  for (int l : free_a) row_dims.push_back(A.dims()[l]);
  for (int l : free_b) col_dims.push_back(B.dims()[l]);
  if (row_dims.empty()) row_dims = {1};
  if (col_dims.empty()) col_dims = {1};
  Tensor out = Tensor::from_matrix(mc, row_dims, col_dims);
  // Drop any padding dim of size 1 we introduced.
  if (out.dims() != out_dims) return Tensor(out_dims, out.data());
  return out;
}

Vector permute_vector_factors(const Vector& v, const std::vector<int>& dims,
                              const std::vector<int>& perm) {
  Tensor t = Tensor::from_vector(v, dims);
  return t.permuted(perm).to_vector();
}

}  // namespace qcatn
