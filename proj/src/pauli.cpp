#include "qcatn/pauli.hpp"

#include <cmath>
#include <numbers>

namespace qcatn {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix weyl_x(int d) {
  Matrix m = Matrix::Zero(d, d);
  for (int s = 0; s < d; ++s) m((s + 1) % d, s) = 1;
  return m;
}

Matrix weyl_z(int d) {
  Matrix m = Matrix::Zero(d, d);
  const double theta = 2.0 * std::numbers::pi / d;
  for (int s = 0; s < d; ++s) m(s, s) = std::polar(1.0, theta * s);
  return m;
}

std::vector<Matrix> weyl_basis(int d) {
  std::vector<Matrix> out;
  out.reserve(d * d);
  const Matrix x = weyl_x(d), z = weyl_z(d);
  Matrix xa = Matrix::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    Matrix el = xa;
    for (int b = 0; b < d; ++b) {
      out.push_back(el);
      el = el * z;
    }
    xa = xa * x;
  }
  return out;
}

std::vector<DenseOperator> operator_basis(const std::vector<SiteLabel>& labels,
                                          int d) {
  const auto single = weyl_basis(d);
  std::vector<DenseOperator> out;
  if (labels.empty()) return out;

  const int n = static_cast<int>(labels.size());
  long count = 1;
  for (int k = 0; k < n; ++k) count *= static_cast<long>(single.size());
  out.reserve(count);

  std::vector<int> choice(n, 0);
  for (long c = 0; c < count; ++c) {
    DenseOperator el = DenseOperator::on({labels[0]}, d, single[choice[0]]);
    for (int k = 1; k < n; ++k)
      el = tensor_product(el, DenseOperator::on({labels[k]}, d, single[choice[k]]));
    out.push_back(std::move(el));
    for (int k = n - 1; k >= 0; --k) {
      if (++choice[k] < static_cast<int>(single.size())) break;
      choice[k] = 0;
    }
  }
  return out;
}

}  // namespace qcatn
