#include "qcatn/channel.hpp"

#include <algorithm>
#include <stdexcept>

#include "qcatn/linalg.hpp"

namespace qcatn {

namespace {

long ipow(long base, int exp) {
  long out = 1;
  for (int k = 0; k < exp; ++k) out *= base;
  return out;
}

std::vector<SiteLabel> physical_block(const Lattice& lat) {
  SiteSet all(lat.num_sites());
  for (int n = 0; n < lat.num_sites(); ++n) all[n] = n;
  return physical_labels(all);
}

}  // namespace

std::vector<SiteLabel> doubled_labels(const Lattice& lat) {
  SiteSet all(lat.num_sites());
  for (int n = 0; n < lat.num_sites(); ++n) all[n] = n;
  auto labels = physical_labels(all);
  auto anc = ancilla_labels(all);
  labels.insert(labels.end(), anc.begin(), anc.end());
  return labels;
}

Vector max_entangled_vector(const Lattice& lat) {
  const long dim = ipow(lat.local_dim(), lat.num_sites());
  Vector phi = Vector::Zero(dim * dim);
  for (long s = 0; s < dim; ++s) phi(s * dim + s) = 1.0;
  return phi;
}

MaxEntangledResource max_entangled_resource(const Lattice& lat) {
  Vector phi = max_entangled_vector(lat);
  Matrix proj = phi * phi.adjoint();
  return {lat, DenseOperator::on(doubled_labels(lat), lat.local_dim(),
                                 std::move(proj))};
}

long Channel::hilbert_dim() const {
  return ipow(lattice_.local_dim(), lattice_.num_sites());
}

Channel Channel::from_kraus(const Lattice& lat,
                            const std::vector<DenseOperator>& kraus,
                            double tol) {
  if (kraus.empty()) throw std::invalid_argument("channel: empty Kraus family");
  const auto full = physical_block(lat);
  std::vector<Matrix> embedded;
  embedded.reserve(kraus.size());
  for (const auto& k : kraus) {
    for (const auto& l : k.support())
      if (l.kind != SiteKind::physical)
        throw std::invalid_argument("channel: Kraus operators must act on V");
    embedded.push_back(embed(k, full, lat.local_dim()).matrix());
  }
  return from_kraus_matrices(lat, embedded, tol);
}

Channel Channel::from_kraus_matrices(const Lattice& lat,
                                     const std::vector<Matrix>& kraus,
                                     double tol) {
  Channel ch(lat);
  const long dim = ch.hilbert_dim();
  Matrix acc = Matrix::Zero(dim, dim);
  for (const auto& k : kraus) {
    if (k.rows() != dim || k.cols() != dim)
      throw std::invalid_argument("channel: Kraus operator has wrong dimension");
    acc += k.adjoint() * k;
  }
  if ((acc - Matrix::Identity(dim, dim)).norm() > tol * std::sqrt(double(dim)))
    throw std::invalid_argument("channel: Kraus family is not trace preserving");

  ch.choi_vectors_.reserve(kraus.size());
  for (const auto& k : kraus) {
    if (k.norm() < 1e-14) continue;  // drop identically-zero members
    Vector v(dim * dim);
    for (long p = 0; p < dim; ++p)
      for (long q = 0; q < dim; ++q) v(p * dim + q) = k(p, q);
    ch.choi_vectors_.push_back(std::move(v));
  }
  return ch;
}

Channel Channel::from_cjs(const Lattice& lat, Matrix R, double tol) {
  Channel ch(lat);
  const long dim = ch.hilbert_dim();
  if (R.rows() != dim * dim || R.cols() != dim * dim)
    throw std::invalid_argument("channel: CJS has wrong dimension");
  ch.dense_ = std::move(R);
  if (ch.hermiticity_residual() > tol)
    throw std::invalid_argument("channel: CJS is not Hermitian");
  if (ch.min_cjs_eigenvalue() < -tol * std::max(1.0, ch.dense_->norm()))
    throw std::invalid_argument("channel: CJS is not positive semidefinite");
  if (ch.trace_preservation_residual() > tol)
    throw std::invalid_argument("channel: CJS does not satisfy tr_V(R) = 1");
  return ch;
}

Channel Channel::from_unitary(const Lattice& lat, Matrix U, double tol) {
  const long dim = ipow(lat.local_dim(), lat.num_sites());
  if (U.rows() != dim || U.cols() != dim)
    throw std::invalid_argument("channel: unitary has wrong dimension");
  if ((U.adjoint() * U - Matrix::Identity(dim, dim)).norm() >
      tol * std::sqrt(double(dim)))
    throw std::invalid_argument("channel: matrix is not unitary");
  Channel ch(lat);
  Vector v(dim * dim);
  for (long p = 0; p < dim; ++p)
    for (long q = 0; q < dim; ++q) v(p * dim + q) = U(p, q);
  ch.choi_vectors_.push_back(std::move(v));
  ch.unitary_ = std::move(U);
  return ch;
}

Channel Channel::identity(const Lattice& lat) {
  const long dim = ipow(lat.local_dim(), lat.num_sites());
  Channel ch = from_unitary(lat, Matrix::Identity(dim, dim));
  ch.set_id("identity");
  return ch;
}

Matrix Channel::cjs_matrix() const {
  if (dense_) return *dense_;
  const long dim2 = hilbert_dim() * hilbert_dim();
  if (dim2 > dense_cap())
    throw std::invalid_argument("channel: CJS dimension exceeds dense cap");
  Matrix R = Matrix::Zero(dim2, dim2);
  for (const auto& v : choi_vectors_) R += v * v.adjoint();
  return R;
}

DenseOperator Channel::cjs_operator() const {
  return DenseOperator::on(doubled_labels(lattice_), lattice_.local_dim(),
                           cjs_matrix());
}

cplx Channel::cjs_trace() const {
  if (dense_) return dense_->trace();
  cplx t(0, 0);
  for (const auto& v : choi_vectors_) t += v.squaredNorm();
  return t;
}

DenseOperator Channel::cjs_partial_trace(const std::vector<SiteLabel>& C) const {
  const auto full = doubled_labels(lattice_);
  if (dense_)
    return partial_trace(DenseOperator::on(full, lattice_.local_dim(), *dense_),
                         C);

  // Vector form: tr_C(Σ v v†) = Σ W W† with W the (keep × traced) reshape.
  const int n = static_cast<int>(full.size());
  std::vector<int> keep_pos, traced_pos;
  for (int k = 0; k < n; ++k) {
    if (std::find(C.begin(), C.end(), full[k]) != C.end())
      traced_pos.push_back(k);
    else
      keep_pos.push_back(k);
  }
  if (static_cast<int>(C.size()) != static_cast<int>(traced_pos.size()))
    throw std::invalid_argument("partial_trace: label not in support");

  const int d = lattice_.local_dim();
  std::vector<int> dims(n, d);
  std::vector<int> perm = keep_pos;
  perm.insert(perm.end(), traced_pos.begin(), traced_pos.end());

  const long keep_dim = ipow(d, static_cast<int>(keep_pos.size()));
  const long tr_dim = ipow(d, static_cast<int>(traced_pos.size()));
  if (keep_dim > dense_cap())
    throw std::invalid_argument("partial_trace: result exceeds dense cap");

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (const auto& v : choi_vectors_) {
    Vector pv = permute_vector_factors(v, dims, perm);
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        W(pv.data(), keep_dim, tr_dim);
    out.noalias() += W * W.adjoint();
  }
  std::vector<SiteLabel> keep_labels;
  for (int k : keep_pos) keep_labels.push_back(full[k]);
  return DenseOperator::on(std::move(keep_labels), d, std::move(out));
}

DenseOperator Channel::apply(const DenseOperator& rho) const {
  const auto full = physical_block(lattice_);
  if (rho.support() != full)
    throw std::invalid_argument("channel: input must be supported on all of V");
  const long dim = hilbert_dim();
  Matrix out = Matrix::Zero(dim, dim);
  if (!choi_vectors_.empty()) {
    for (const auto& v : choi_vectors_) {
      Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>
          K(v.data(), dim, dim);
      out.noalias() += K * rho.matrix() * K.adjoint();
    }
  } else {
    // E(ρ)[p,p'] = Σ_{q2,q} R[(p,q2),(p',q)] ρ[q2,q]: one tensor contraction.
    const int di = static_cast<int>(dim);
    Tensor rt({di, di, di, di});
    for (long row = 0; row < dim * dim; ++row)
      for (long col = 0; col < dim * dim; ++col)
        rt.data()[row * dim * dim + col] = (*dense_)(row, col);
    Tensor xt = Tensor::from_matrix(rho.matrix(), {di}, {di});
    Tensor res = contract(rt, {1, 3}, xt, {0, 1});
    out = res.matricize({0});
  }
  return DenseOperator::on(full, lattice_.local_dim(), std::move(out));
}

DenseOperator Channel::adjoint_apply(const DenseOperator& X) const {
  const auto full = physical_block(lattice_);
  if (X.support() != full)
    throw std::invalid_argument("channel: observable must be supported on all of V");
  const long dim = hilbert_dim();
  Matrix out = Matrix::Zero(dim, dim);
  if (unitary_) {
    out = unitary_->adjoint() * X.matrix() * (*unitary_);
  } else if (!choi_vectors_.empty()) {
    for (const auto& v : choi_vectors_) {
      Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>
          K(v.data(), dim, dim);
      out.noalias() += K.adjoint() * X.matrix() * K;
    }
  } else {
    // E†(X) = [tr_V((X ⊗ 1)R)]^T: Z[q,q'] = Σ_{p,p2} X[p,p2] R[(p2,q),(p,q')].
    const int di = static_cast<int>(dim);
    Tensor rt({di, di, di, di});
    for (long row = 0; row < dim * dim; ++row)
      for (long col = 0; col < dim * dim; ++col)
        rt.data()[row * dim * dim + col] = (*dense_)(row, col);
    Tensor xt = Tensor::from_matrix(X.matrix(), {di}, {di});
    Tensor z = contract(rt, {0, 2}, xt, {1, 0});
    out = Matrix(z.matricize({0})).transpose();
  }
  return DenseOperator::on(full, lattice_.local_dim(), std::move(out));
}

std::vector<Matrix> Channel::kraus_matrices() const {
  const long dim = hilbert_dim();
  std::vector<Matrix> out;
  if (!choi_vectors_.empty()) {
    // Orthogonalize through the Gram matrix; rank = rank of R.
    const int k = static_cast<int>(choi_vectors_.size());
    Matrix gram(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) gram(i, j) = choi_vectors_[i].dot(choi_vectors_[j]);
    EighResult eg = eigh(gram);
    for (int j = 0; j < k; ++j) {
      if (eg.eigenvalues[j] <= 1e-12 * std::abs(eg.eigenvalues[0])) continue;
      Vector v = Vector::Zero(dim * dim);
      for (int i = 0; i < k; ++i) v += eg.eigenvectors(i, j) * choi_vectors_[i];
      v /= std::sqrt(eg.eigenvalues[j]);
      Matrix m(dim, dim);
      for (long p = 0; p < dim; ++p)
        for (long q = 0; q < dim; ++q) m(p, q) = std::sqrt(eg.eigenvalues[j]) * v(p * dim + q);
      out.push_back(std::move(m));
    }
    return out;
  }
  EighResult eg = eigh(*dense_);
  for (size_t j = 0; j < eg.eigenvalues.size(); ++j) {
    if (eg.eigenvalues[j] <= 1e-12 * std::max(1.0, eg.eigenvalues[0])) continue;
    Matrix m(dim, dim);
    const double c = std::sqrt(eg.eigenvalues[j]);
    for (long p = 0; p < dim; ++p)
      for (long q = 0; q < dim; ++q) m(p, q) = c * eg.eigenvectors(p * dim + q, j);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<double> Channel::cjs_top_eigenvalues(int k) const {
  if (!choi_vectors_.empty()) {
    const int nv = static_cast<int>(choi_vectors_.size());
    Matrix gram(nv, nv);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j)
        gram(i, j) = choi_vectors_[i].dot(choi_vectors_[j]);
    EighResult eg = eigh(gram);
    std::vector<double> out;
    for (int i = 0; i < k; ++i)
      out.push_back(i < nv ? std::max(eg.eigenvalues[i], 0.0) : 0.0);
    return out;
  }
  auto top = top_eigenvalues_hermitian(*dense_, k);
  while (static_cast<int>(top.size()) < k) top.push_back(0.0);
  return top;
}

double Channel::trace_preservation_residual() const {
  SiteSet all(lattice_.num_sites());
  for (int n = 0; n < lattice_.num_sites(); ++n) all[n] = n;
  DenseOperator tr_v = cjs_partial_trace(physical_labels(all));
  const long dim = tr_v.dim();
  return (tr_v.matrix() - Matrix::Identity(dim, dim)).norm() /
         std::sqrt(double(dim));
}

double Channel::hermiticity_residual() const {
  if (!dense_) return 0.0;  // Σ v v† is Hermitian identically
  return (*dense_ - dense_->adjoint()).norm() / std::max(1.0, dense_->norm());
}

double Channel::min_cjs_eigenvalue() const {
  if (!dense_) return 0.0;  // Σ v v† ≥ 0 identically
  return min_eigenvalue_hermitian(*dense_);
}

Channel convex_combine(const std::vector<double>& weights,
                       const std::vector<Channel>& channels) {
  if (weights.size() != channels.size() || channels.empty())
    throw std::invalid_argument("convex_combine: weight/channel count mismatch");
  double total = 0;
  for (double w : weights) {
    if (w < 0) throw std::invalid_argument("convex_combine: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kNumTol)
    throw std::invalid_argument("convex_combine: weights must sum to 1");
  for (size_t i = 1; i < channels.size(); ++i)
    if (channels[i].lattice().describe() != channels[0].lattice().describe())
      throw std::invalid_argument("convex_combine: channels on different lattices");

  bool all_vectors = true;
  for (const auto& ch : channels) all_vectors = all_vectors && ch.has_vectors();

  if (all_vectors) {
    std::vector<Matrix> kraus;
    const long dim = channels[0].hilbert_dim();
    for (size_t i = 0; i < channels.size(); ++i) {
      if (weights[i] == 0.0) continue;
      const double c = std::sqrt(weights[i]);
      for (const auto& v : channels[i].choi_vectors()) {
        Matrix k(dim, dim);
        for (long p = 0; p < dim; ++p)
          for (long q = 0; q < dim; ++q) k(p, q) = c * v(p * dim + q);
        kraus.push_back(std::move(k));
      }
    }
    return Channel::from_kraus_matrices(channels[0].lattice(), kraus);
  }

  Matrix R = Matrix::Zero(channels[0].hilbert_dim() * channels[0].hilbert_dim(),
                          channels[0].hilbert_dim() * channels[0].hilbert_dim());
  for (size_t i = 0; i < channels.size(); ++i)
    if (weights[i] > 0.0) R += weights[i] * channels[i].cjs_matrix();
  return Channel::from_cjs(channels[0].lattice(), std::move(R));
}

Channel dilated_channel(const Channel& fat_unitary, int physical_dim,
                        std::optional<Vector> ancilla_init) {
  const Lattice& fat = fat_unitary.lattice();
  const int d = physical_dim;
  if (fat.local_dim() != d * d)
    throw std::invalid_argument(
        "dilated_channel: fat lattice local dimension must be d^2");
  if (!fat_unitary.unitary_matrix())
    throw std::invalid_argument("dilated_channel: channel is not unitary");

  Vector chi;
  if (ancilla_init) {
    chi = *ancilla_init;
    if (chi.size() != d)
      throw std::invalid_argument("dilated_channel: ancilla state has wrong dim");
    chi.normalize();
  } else {
    chi = Vector::Zero(d);
    chi(1) = 1.0;  // ancillas start in |1⟩
  }

  const int N = fat.num_sites();
  const Matrix& U = *fat_unitary.unitary_matrix();
  const long dimV = ipow(d, N);
  const long dim_fat = ipow(static_cast<long>(d) * d, N);

  // K_j[p,q] = Σ_a U[F(p,j), F(q,a)] Π_m chi[a_m], with the fat index
  // F(x,y) interleaving x_m (physical) major and y_m (ancilla) minor per site.
  auto fat_index = [&](long x, long y) {
    long f = 0;
    std::vector<int> xs(N), ys(N);
    for (int m = N - 1; m >= 0; --m) {
      xs[m] = static_cast<int>(x % d);
      x /= d;
      ys[m] = static_cast<int>(y % d);
      y /= d;
    }
    for (int m = 0; m < N; ++m) f = f * (d * d) + xs[m] * d + ys[m];
    return f;
  };

  std::vector<Matrix> kraus(dimV, Matrix::Zero(dimV, dimV));
  Vector col(dim_fat);
  for (long q = 0; q < dimV; ++q) {
    col.setZero();
    // ⊗_m (e_{q_m} ⊗ chi): d^N nonzero fat amplitudes.
    for (long a = 0; a < dimV; ++a) {
      cplx amp(1, 0);
      long aa = a;
      for (int m = 0; m < N; ++m) {
        amp *= chi(aa % d);
        aa /= d;
      }
      // chi digits consumed least-significant first; amplitude is a product,
      // order does not matter.
      col(fat_index(q, a)) = amp;
    }
    Vector w = U * col;
    for (long j = 0; j < dimV; ++j)
      for (long p = 0; p < dimV; ++p) kraus[j](p, q) = w(fat_index(p, j));
  }

  Lattice phys_lat(fat.spatial_dim(), fat.linear_size(), d, fat.boundary(),
                   fat.range());
  Channel out = Channel::from_kraus_matrices(phys_lat, kraus);
  out.set_id(fat_unitary.id() + "-dilated");
  return out;
}

}  // namespace qcatn
