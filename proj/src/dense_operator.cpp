#include "qcatn/dense_operator.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>

#include "qcatn/linalg.hpp"

namespace qcatn {

namespace {
std::atomic<long> g_dense_cap{1L << 14};
}

long dense_cap() { return g_dense_cap.load(); }
void set_dense_cap(long cap) {
  if (cap < 2) throw std::invalid_argument("dense cap must be at least 2");
  g_dense_cap.store(cap);
}

std::vector<SiteLabel> physical_labels(const SiteSet& sites) {
  std::vector<SiteLabel> out;
  out.reserve(sites.size());
  for (int s : sites) out.push_back({s, SiteKind::physical});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SiteLabel> ancilla_labels(const SiteSet& sites) {
  std::vector<SiteLabel> out;
  out.reserve(sites.size());
  for (int s : sites) out.push_back({s, SiteKind::ancilla});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SiteLabel> merge_labels(std::vector<SiteLabel> a,
                                    const std::vector<SiteLabel>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

std::string to_string(const SiteLabel& l) {
  std::ostringstream os;
  os << l.site << (l.kind == SiteKind::ancilla ? "'" : "");
  return os.str();
}

DenseOperator::DenseOperator(std::vector<SiteLabel> support,
                             std::vector<int> dims, Matrix data)
    : support_(std::move(support)), dims_(std::move(dims)), data_(std::move(data)) {
  if (support_.size() != dims_.size())
    throw std::invalid_argument("operator: support/dims size mismatch");
  long total = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("operator: invalid local dimension");
    total *= d;
  }
  if (data_.rows() != total || data_.cols() != total)
    throw std::invalid_argument("operator: matrix size does not match support");
  if (total > dense_cap()) {
    std::ostringstream os;
    os << "operator: dimension " << total << " exceeds dense cap " << dense_cap();
    throw std::invalid_argument(os.str());
  }
  for (size_t k = 0; k + 1 < support_.size(); ++k)
    if (!(support_[k] < support_[k + 1])) {
      // Re-sort to the canonical order, permuting the matrix along with it.
      std::vector<int> perm(support_.size());
      for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
      std::sort(perm.begin(), perm.end(),
                [&](int x, int y) { return support_[x] < support_[y]; });
      for (size_t i = 0; i + 1 < perm.size(); ++i)
        if (support_[perm[i]] == support_[perm[i + 1]])
          throw std::invalid_argument("operator: duplicate factor in support");

      std::vector<int> row_dims = dims_, col_dims = dims_;
      Tensor t = Tensor::from_matrix(data_, row_dims, col_dims);
      const int n = static_cast<int>(support_.size());
      std::vector<int> tperm(2 * n);
      for (int i = 0; i < n; ++i) {
        tperm[i] = perm[i];
        tperm[n + i] = n + perm[i];
      }
      Tensor tp = t.permuted(tperm);

      std::vector<SiteLabel> new_support(support_.size());
      std::vector<int> new_dims(dims_.size());
      for (size_t i = 0; i < perm.size(); ++i) {
        new_support[i] = support_[perm[i]];
        new_dims[i] = dims_[perm[i]];
      }
      std::vector<int> rl(n);
      for (int i = 0; i < n; ++i) rl[i] = i;
      data_ = tp.matricize(rl);
      support_ = std::move(new_support);
      dims_ = std::move(new_dims);
      return;
    }
  // Detect duplicates in already-sorted support.
  for (size_t k = 0; k + 1 < support_.size(); ++k)
    if (support_[k] == support_[k + 1])
      throw std::invalid_argument("operator: duplicate factor in support");
}

DenseOperator DenseOperator::on(std::vector<SiteLabel> support, int local_dim,
                                Matrix data) {
  std::vector<int> dims(support.size(), local_dim);
  return DenseOperator(std::move(support), std::move(dims), std::move(data));
}

DenseOperator DenseOperator::identity(std::vector<SiteLabel> support,
                                      int local_dim) {
  long total = 1;
  for (size_t k = 0; k < support.size(); ++k) total *= local_dim;
  return on(std::move(support), local_dim, Matrix::Identity(total, total));
}

int DenseOperator::local_dim_of(const SiteLabel& l) const {
  for (size_t k = 0; k < support_.size(); ++k)
    if (support_[k] == l) return dims_[k];
  throw std::invalid_argument("operator: label not in support");
}

bool DenseOperator::is_hermitian(double tol) const {
  return (data_ - data_.adjoint()).norm() <= tol * std::max(1.0, data_.norm());
}

bool DenseOperator::is_positive_semidefinite(double tol) const {
  if (!is_hermitian(tol)) return false;
  double lo = min_eigenvalue_hermitian(data_);
  return lo >= -tol * std::max(1.0, data_.norm());
}

bool DenseOperator::is_trace_one(double tol) const {
  return std::abs(trace() - cplx(1, 0)) <= tol;
}

DenseOperator DenseOperator::adjoint() const {
  return DenseOperator(support_, dims_, data_.adjoint());
}

DenseOperator DenseOperator::transpose() const {
  return DenseOperator(support_, dims_, data_.transpose());
}

static void require_same_support(const DenseOperator& p, const DenseOperator& q) {
  if (p.support() != q.support() || p.dims() != q.dims())
    throw std::invalid_argument("operator: supports do not match");
}

DenseOperator operator+(const DenseOperator& p, const DenseOperator& q) {
  require_same_support(p, q);
  return DenseOperator(p.support_, p.dims_, p.data_ + q.data_);
}

DenseOperator operator-(const DenseOperator& p, const DenseOperator& q) {
  require_same_support(p, q);
  return DenseOperator(p.support_, p.dims_, p.data_ - q.data_);
}

DenseOperator operator*(cplx s, const DenseOperator& p) {
  return DenseOperator(p.support_, p.dims_, s * p.data_);
}

DenseOperator& DenseOperator::operator*=(cplx s) {
  data_ *= s;
  return *this;
}

DenseOperator tensor_product(const DenseOperator& p, const DenseOperator& q) {
  for (const auto& l : p.support())
    for (const auto& m : q.support())
      if (l == m) throw std::invalid_argument("tensor_product: overlapping supports");

  // Kron in concatenated order, then let the constructor re-sort canonically.
  const long dp = p.dim(), dq = q.dim();
  Matrix out(dp * dq, dp * dq);
  for (long i = 0; i < dp; ++i)
    for (long j = 0; j < dp; ++j)
      out.block(i * dq, j * dq, dq, dq) = p.matrix()(i, j) * q.matrix();

  std::vector<SiteLabel> support = p.support();
  support.insert(support.end(), q.support().begin(), q.support().end());
  std::vector<int> dims = p.dims();
  dims.insert(dims.end(), q.dims().begin(), q.dims().end());
  return DenseOperator(std::move(support), std::move(dims), std::move(out));
}

DenseOperator partial_trace(const DenseOperator& p,
                            const std::vector<SiteLabel>& C) {
  std::vector<int> traced;  // positions within the support
  for (const auto& l : C) {
    auto it = std::find(p.support().begin(), p.support().end(), l);
    if (it == p.support().end())
      throw std::invalid_argument("partial_trace: label not in support");
    traced.push_back(static_cast<int>(it - p.support().begin()));
  }
  std::sort(traced.begin(), traced.end());
  traced.erase(std::unique(traced.begin(), traced.end()), traced.end());

  const int n = static_cast<int>(p.support().size());
  std::vector<char> is_traced(n, 0);
  for (int t : traced) is_traced[t] = 1;

  std::vector<SiteLabel> keep_support;
  std::vector<int> keep_dims;
  long keep_total = 1, traced_total = 1;
  for (int k = 0; k < n; ++k) {
    if (is_traced[k]) {
      traced_total *= p.dims()[k];
    } else {
      keep_support.push_back(p.support()[k]);
      keep_dims.push_back(p.dims()[k]);
      keep_total *= p.dims()[k];
    }
  }

  // Strides of each factor in the full index.
  std::vector<long> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * p.dims()[k + 1];

  // Row index = sum over kept factors + sum over traced factors.
  std::vector<long> keep_stride, tr_stride;
  std::vector<int> keep_dim_list, tr_dim_list;
  for (int k = 0; k < n; ++k) {
    if (is_traced[k]) {
      tr_stride.push_back(stride[k]);
      tr_dim_list.push_back(p.dims()[k]);
    } else {
      keep_stride.push_back(stride[k]);
      keep_dim_list.push_back(p.dims()[k]);
    }
  }

  auto offsets = [](const std::vector<int>& dims, const std::vector<long>& strides) {
    std::vector<long> out(1, 0);
    for (size_t k = 0; k < dims.size(); ++k) {
      std::vector<long> next;
      next.reserve(out.size() * dims[k]);
      for (long base : out)
        for (int v = 0; v < dims[k]; ++v) next.push_back(base + v * strides[k]);
      out = std::move(next);
    }
    return out;
  };
  const std::vector<long> keep_off = offsets(keep_dim_list, keep_stride);
  const std::vector<long> tr_off = offsets(tr_dim_list, tr_stride);
  (void)traced_total;

  Matrix out = Matrix::Zero(keep_total, keep_total);
  const Matrix& m = p.matrix();
  for (long i = 0; i < keep_total; ++i)
    for (long j = 0; j < keep_total; ++j) {
      cplx acc(0, 0);
      for (long t : tr_off) acc += m(keep_off[i] + t, keep_off[j] + t);
      out(i, j) = acc;
    }
  return DenseOperator(std::move(keep_support), std::move(keep_dims),
                       std::move(out));
}

DenseOperator embed(const DenseOperator& p, const std::vector<SiteLabel>& full,
                    int local_dim) {
  std::vector<SiteLabel> missing;
  for (const auto& l : full)
    if (std::find(p.support().begin(), p.support().end(), l) == p.support().end())
      missing.push_back(l);
  for (const auto& l : p.support())
    if (std::find(full.begin(), full.end(), l) == full.end())
      throw std::invalid_argument("embed: target support is not a superset");
  if (missing.empty()) return p;
  return tensor_product(p, DenseOperator::identity(missing, local_dim));
}

cplx hs_inner(const DenseOperator& p, const DenseOperator& q) {
  require_same_support(p, q);
  return (p.matrix().adjoint() * q.matrix()).trace();
}

}  // namespace qcatn
