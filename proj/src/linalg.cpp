#include "qcatn/linalg.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qcatn {

EighResult eigh(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigh: matrix not square");
  if ((m - m.adjoint()).norm() > tol * std::max(1.0, m.norm()))
    throw std::invalid_argument("eigh: matrix not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed to converge");

  const long n = m.rows();
  EighResult out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (long k = 0; k < n; ++k) {  // Eigen sorts ascending; flip to descending
    out.eigenvalues[k] = es.eigenvalues()(n - 1 - k);
    out.eigenvectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  return out;
}

double op_norm_inf(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

std::vector<double> singular_values(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  std::vector<double> s(svd.singularValues().data(),
                        svd.singularValues().data() + svd.singularValues().size());
  return s;
}

namespace {

/// Lanczos tridiagonalization with full reorthogonalization. Returns the
/// Ritz values (ascending). Exact after `dim` steps for matrices with few
/// distinct eigenvalues, which is the regime the large CJS checks live in.
std::vector<double> lanczos_ritz(const Matrix& m, int max_steps,
                                 std::uint64_t seed) {
  const long n = m.rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Vector v(n);
  for (long i = 0; i < n; ++i) v(i) = cplx(gauss(rng), gauss(rng));
  v.normalize();

  std::vector<Vector> basis;
  std::vector<double> alpha, beta;
  basis.push_back(v);

  for (int step = 0; step < max_steps; ++step) {
    Vector w = m * basis.back();
    double a = std::real(basis.back().dot(w));
    alpha.push_back(a);
    w -= a * basis.back();
    if (basis.size() > 1) w -= beta.back() * basis[basis.size() - 2];
    // Full reorthogonalization keeps the Ritz values honest.
    for (const Vector& u : basis) w -= u.dot(w) * u;
    double b = w.norm();
    if (b < 1e-13) break;  // Krylov space exhausted: Ritz values are exact
    beta.push_back(b);
    basis.push_back(w / b);
  }

  const int k = static_cast<int>(alpha.size());
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    tri(i, i) = alpha[i];
    if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
  std::vector<double> ritz(es.eigenvalues().data(), es.eigenvalues().data() + k);
  return ritz;
}

}  // namespace

std::pair<double, double> extremal_eigenvalues_hermitian(const Matrix& m,
                                                         long dense_switch,
                                                         std::uint64_t seed) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("extremal eigenvalues: matrix not square");
  if (m.rows() <= dense_switch) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                             Eigen::EigenvaluesOnly);
    return {es.eigenvalues()(0), es.eigenvalues()(m.rows() - 1)};
  }
  int steps = static_cast<int>(std::min<long>(m.rows(), 128));
  // Two starts guard against an unlucky vector orthogonal to an extreme space.
  auto r1 = lanczos_ritz(m, steps, seed);
  auto r2 = lanczos_ritz(m, steps, seed ^ 0xc2b2ae3d27d4eb4full);
  double lo = std::min(r1.front(), r2.front());
  double hi = std::max(r1.back(), r2.back());
  return {lo, hi};
}

double min_eigenvalue_hermitian(const Matrix& m) {
  return extremal_eigenvalues_hermitian(m).first;
}

double max_eigenvalue_hermitian(const Matrix& m) {
  return extremal_eigenvalues_hermitian(m).second;
}

std::vector<double> top_eigenvalues_hermitian(const Matrix& m, int k) {
  if (m.rows() <= 1024) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                             Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (int i = 0; i < k && i < m.rows(); ++i)
      out.push_back(es.eigenvalues()(m.rows() - 1 - i));
    return out;
  }
  auto ritz = lanczos_ritz(m, std::min<long>(m.rows(), 160), 0x6a09e667f3bcc909ull);
  std::sort(ritz.rbegin(), ritz.rend());
  if (static_cast<int>(ritz.size()) > k) ritz.resize(k);
  return ritz;
}

ThinSvd svd_truncated(const Matrix& m, double threshold) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > threshold) ++rank;
  rank = std::max(rank, 1);  // keep at least one direction

  ThinSvd out;
  out.u = svd.matrixU().leftCols(rank);
  out.s.assign(sv.data(), sv.data() + rank);
  out.vdag = svd.matrixV().leftCols(rank).adjoint();
  return out;
}

}  // namespace qcatn
