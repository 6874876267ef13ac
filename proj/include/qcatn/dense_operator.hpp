#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcatn/lattice.hpp"
#include "qcatn/tensor.hpp"

namespace qcatn {

/// Numerical tolerance used by every equality/positivity predicate.
inline constexpr double kNumTol = 1e-9;

enum class SiteKind { physical, ancilla };

/// A tensor factor: a lattice site, either on the physical lattice V or on
/// its ancilla copy V'. Canonical order is the physical block before the
/// ancilla block, each sorted by row-major site index — the H ⊗ H convention
/// of the Choi-Jamiolkowski construction.
struct SiteLabel {
  int site = 0;  // row-major site index within the lattice
  SiteKind kind = SiteKind::physical;

  friend bool operator==(const SiteLabel&, const SiteLabel&) = default;
  friend auto operator<=>(const SiteLabel& l, const SiteLabel& r) {
    if (l.kind != r.kind) return l.kind <=> r.kind;
    return l.site <=> r.site;
  }
};

std::vector<SiteLabel> physical_labels(const SiteSet& sites);
std::vector<SiteLabel> ancilla_labels(const SiteSet& sites);
std::vector<SiteLabel> merge_labels(std::vector<SiteLabel> a,
                                    const std::vector<SiteLabel>& b);

/// Soft cap on the matrix dimension a DenseOperator may materialize.
/// Overridable via set_dense_cap (CLI: env QCATN_DENSE_CAP).
long dense_cap();
void set_dense_cap(long cap);

/// Complex operator on a labeled set of tensor factors. The row/column index
/// factorization follows the support order, first label most significant.
class DenseOperator {
 public:
  DenseOperator() = default;
  /// Support is re-sorted to canonical order; data must match the order given.
  DenseOperator(std::vector<SiteLabel> support, std::vector<int> dims,
                Matrix data);

  /// Uniform local dimension convenience.
  static DenseOperator on(std::vector<SiteLabel> support, int local_dim,
                          Matrix data);
  static DenseOperator identity(std::vector<SiteLabel> support, int local_dim);

  const std::vector<SiteLabel>& support() const { return support_; }
  const std::vector<int>& dims() const { return dims_; }
  const Matrix& matrix() const { return data_; }
  Matrix& matrix() { return data_; }
  long dim() const { return data_.rows(); }
  int local_dim_of(const SiteLabel& l) const;

  cplx trace() const { return data_.trace(); }
  double fnorm() const { return data_.norm(); }

  bool is_hermitian(double tol = kNumTol) const;
  bool is_positive_semidefinite(double tol = kNumTol) const;
  bool is_trace_one(double tol = kNumTol) const;

  DenseOperator adjoint() const;
  DenseOperator transpose() const;  // computational-basis transpose

  friend DenseOperator operator+(const DenseOperator& p, const DenseOperator& q);
  friend DenseOperator operator-(const DenseOperator& p, const DenseOperator& q);
  friend DenseOperator operator*(cplx s, const DenseOperator& p);
  DenseOperator& operator*=(cplx s);

 private:
  std::vector<SiteLabel> support_;
  std::vector<int> dims_;
  Matrix data_;
};

/// Operator on the union support; errors on overlapping supports.
DenseOperator tensor_product(const DenseOperator& p, const DenseOperator& q);

/// Trace out the factors in C (must be a subset of the support).
DenseOperator partial_trace(const DenseOperator& p,
                            const std::vector<SiteLabel>& C);

/// Extend with identity factors so the support becomes `full` (superset).
DenseOperator embed(const DenseOperator& p, const std::vector<SiteLabel>& full,
                    int local_dim);

/// Hilbert-Schmidt inner product tr(p† q); supports must coincide.
cplx hs_inner(const DenseOperator& p, const DenseOperator& q);

std::string to_string(const SiteLabel& l);

}  // namespace qcatn
