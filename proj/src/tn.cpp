#include "qcatn/tn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcatn/linalg.hpp"
#include "qcatn/pauli.hpp"
#include "qcatn/random.hpp"

namespace qcatn {

namespace {

long ipow(long base, int exp) {
  long out = 1;
  for (int k = 0; k < exp; ++k) out *= base;
  return out;
}

SiteSet all_sites(const Lattice& lat) {
  SiteSet all(lat.num_sites());
  for (int n = 0; n < lat.num_sites(); ++n) all[n] = n;
  return all;
}

SiteSet ball(const Lattice& lat, int n, int r) {
  SiteSet b = lat.neighborhood({n}, r);
  b.push_back(n);
  std::sort(b.begin(), b.end());
  return b;
}

/// Restriction of U X_n U† to the sites in `keep`, plus the leak residual.
struct LocalizedOp {
  DenseOperator op;       // on physical `keep`
  double leak = 0.0;      // relative to ‖X‖
};
LocalizedOp localize(const Matrix& conj, const Lattice& lat, const SiteSet& keep,
                     double xnorm) {
  const int d = lat.local_dim();
  DenseOperator full = DenseOperator::on(physical_labels(all_sites(lat)), d, conj);
  SiteSet outside;
  std::set_difference(all_sites(lat).begin(), all_sites(lat).end(), keep.begin(),
                      keep.end(), std::back_inserter(outside));
  DenseOperator reduced = partial_trace(full, physical_labels(outside));
  reduced *= 1.0 / std::pow(double(d), double(outside.size()));
  DenseOperator model = embed(reduced, full.support(), d);
  LocalizedOp out{std::move(reduced), (full - model).fnorm() / xnorm};
  return out;
}

/// Apply a local operator to a vector on a product space: `positions` are
/// the factor indices (all of dimension d) the operator acts on, in the
/// operator's own support order.
Vector apply_local(const Vector& v, int num_factors, int d,
                   const std::vector<int>& positions, const Matrix& op) {
  std::vector<int> dims(num_factors, d);
  std::vector<int> perm = positions;
  for (int k = 0; k < num_factors; ++k)
    if (std::find(positions.begin(), positions.end(), k) == positions.end())
      perm.push_back(k);
  Vector pv = permute_vector_factors(v, dims, perm);

  const long dop = op.rows();
  const long rest = v.size() / dop;
  Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      W(pv.data(), dop, rest);
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> applied =
      op * W;
  Vector flat(v.size());
  std::copy(applied.data(), applied.data() + v.size(), flat.data());

  std::vector<int> inv(num_factors);
  for (int k = 0; k < num_factors; ++k) inv[perm[k]] = k;
  return permute_vector_factors(flat, dims, inv);
}

const Matrix& require_unitary(const Channel& ch, const char* who) {
  if (!ch.unitary_matrix())
    throw std::invalid_argument(std::string(who) + ": channel is not unitary");
  return *ch.unitary_matrix();
}

}  // namespace

TensorNetworkOperator::TensorNetworkOperator(Lattice lat,
                                             std::vector<Tensor> site_tensors)
    : lattice_(std::move(lat)), site_tensors_(std::move(site_tensors)) {
  if (static_cast<int>(site_tensors_.size()) != lattice_.num_sites())
    throw std::invalid_argument("tno: one tensor per lattice site required");
  edges_ = lattice_.edges();
  bond_dims_.assign(edges_.size(), 0);

  const int d = lattice_.local_dim();
  for (int n = 0; n < lattice_.num_sites(); ++n) {
    const Tensor& t = site_tensors_[n];
    const auto inc = incident_edges(n);
    if (t.rank() != 2 + static_cast<int>(inc.size()))
      throw std::invalid_argument("tno: site tensor has wrong rank");
    if (t.dims()[0] != d || t.dims()[1] != d)
      throw std::invalid_argument("tno: physical legs must have dimension d");
    for (size_t k = 0; k < inc.size(); ++k) {
      const int dim = t.dims()[2 + k];
      int& bd = bond_dims_[inc[k]];
      if (bd == 0)
        bd = dim;
      else if (bd != dim)
        throw std::invalid_argument("tno: bond dimension mismatch across an edge");
    }
  }
}

std::vector<int> TensorNetworkOperator::incident_edges(int site) const {
  std::vector<int> out;
  for (size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].first == site || edges_[e].second == site)
      out.push_back(static_cast<int>(e));
  return out;
}

int TensorNetworkOperator::max_bond_dim() const {
  int mx = 1;
  for (int b : bond_dims_) mx = std::max(mx, b);
  return mx;
}

DenseOperator contract_to_dense(const TensorNetworkOperator& tno) {
  const Lattice& lat = tno.lattice();
  const int d = lat.local_dim();
  const long dim = ipow(d, lat.num_sites());
  if (dim > dense_cap())
    throw std::invalid_argument("contract_to_dense: dimension exceeds dense cap");

  // Leg bookkeeping for the accumulator: kind 0 = open bond (id = edge),
  // kind 1 = phys_out (id = site), kind 2 = phys_in (id = site).
  struct Leg {
    int kind;
    int id;
  };
  Tensor acc;
  std::vector<Leg> legs;

  for (int n = 0; n < lat.num_sites(); ++n) {
    const Tensor& t = tno.site_tensors()[n];
    const auto inc = tno.incident_edges(n);
    std::vector<Leg> t_legs = {{1, n}, {2, n}};
    for (int e : inc) t_legs.push_back({0, e});

    if (n == 0) {
      acc = t;
      legs = t_legs;
      continue;
    }
    std::vector<int> contract_acc, contract_t;
    for (size_t la = 0; la < legs.size(); ++la)
      for (size_t lt = 0; lt < t_legs.size(); ++lt)
        if (legs[la].kind == 0 && t_legs[lt].kind == 0 &&
            legs[la].id == t_legs[lt].id) {
          contract_acc.push_back(static_cast<int>(la));
          contract_t.push_back(static_cast<int>(lt));
        }
    Tensor merged = contract(acc, contract_acc, t, contract_t);

    std::vector<Leg> new_legs;
    for (size_t la = 0; la < legs.size(); ++la)
      if (std::find(contract_acc.begin(), contract_acc.end(),
                    static_cast<int>(la)) == contract_acc.end())
        new_legs.push_back(legs[la]);
    for (size_t lt = 0; lt < t_legs.size(); ++lt)
      if (std::find(contract_t.begin(), contract_t.end(), static_cast<int>(lt)) ==
          contract_t.end())
        new_legs.push_back(t_legs[lt]);
    acc = std::move(merged);
    legs = std::move(new_legs);
  }

  for (const auto& l : legs)
    if (l.kind == 0)
      throw std::invalid_argument("contract_to_dense: dangling bond leg");

  // Permute to out legs (site order) then in legs (site order).
  std::vector<int> perm;
  for (int kind : {1, 2})
    for (int n = 0; n < lat.num_sites(); ++n)
      for (size_t k = 0; k < legs.size(); ++k)
        if (legs[k].kind == kind && legs[k].id == n)
          perm.push_back(static_cast<int>(k));
  if (static_cast<int>(perm.size()) != acc.rank())
    throw std::invalid_argument("contract_to_dense: leg accounting failure");
  Tensor ord = acc.permuted(perm);

  std::vector<int> row_legs(lat.num_sites());
  for (int n = 0; n < lat.num_sites(); ++n) row_legs[n] = n;
  Matrix m = ord.matricize(row_legs);
  return DenseOperator::on(physical_labels(all_sites(lat)), d, std::move(m));
}

double heisenberg_range_residual(const Channel& unitary_channel, int r) {
  const Matrix& U = require_unitary(unitary_channel, "heisenberg range check");
  const Lattice& lat = unitary_channel.lattice();
  const int d = lat.local_dim();
  const auto full = physical_labels(all_sites(lat));

  double worst = 0.0;
  for (int n = 0; n < lat.num_sites(); ++n) {
    const SiteSet keep = ball(lat, n, r);
    for (const Matrix& x : weyl_basis(d)) {
      DenseOperator X = embed(
          DenseOperator::on({{n, SiteKind::physical}}, d, x), full, d);
      Matrix conj = U * X.matrix() * U.adjoint();
      worst = std::max(worst, localize(conj, lat, keep, X.fnorm()).leak);
    }
  }
  return worst;
}

ParentHamiltonianData parent_hamiltonian_data(const Channel& qca, int r) {
  const Matrix& U = require_unitary(qca, "parent hamiltonian");
  const Lattice& lat = qca.lattice();
  const int d = lat.local_dim();
  const auto full = physical_labels(all_sites(lat));

  ParentHamiltonianData data;
  for (int n = 0; n < lat.num_sites(); ++n) {
    const SiteSet keep = ball(lat, n, r);
    // T_n = (U⊗1)(1/d |Φ⟩_n⟨Φ|)(U⊗1)† = (1/d) Σ_{s,t} U|s⟩_n⟨t|U† ⊗ |s⟩_n'⟨t|,
    // with the physical conjugations restricted to ball(n, r).
    const std::vector<SiteLabel> support =
        merge_labels(physical_labels(keep), {{n, SiteKind::ancilla}});
    const long dk = ipow(d, static_cast<int>(keep.size()));
    Matrix tn_local = Matrix::Zero(dk * d, dk * d);
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t) {
        Matrix unit = Matrix::Zero(d, d);
        unit(s, t) = 1.0;
        DenseOperator X = embed(
            DenseOperator::on({{n, SiteKind::physical}}, d, unit), full, d);
        Matrix conj = U * X.matrix() * U.adjoint();
        LocalizedOp loc = localize(conj, lat, keep, 1.0);
        // Support order is physical ball then the single ancilla, so the
        // ancilla is the least significant factor.
        for (long i = 0; i < dk; ++i)
          for (long j = 0; j < dk; ++j)
            tn_local(i * d + s, j * d + t) += loc.op.matrix()(i, j) / double(d);
      }
    DenseOperator Tn(support, std::vector<int>(support.size(), d),
                     std::move(tn_local));
    DenseOperator Qn = DenseOperator::identity(support, d) - Tn;
    data.max_projector_residual = std::max(
        data.max_projector_residual,
        (Qn.matrix() * Qn.matrix() - Qn.matrix()).norm());
    data.supports.push_back(support);
    data.projectors.push_back(std::move(Qn));
  }

  // Pairwise commutators on the joint support.
  for (size_t i = 0; i < data.projectors.size(); ++i)
    for (size_t j = i + 1; j < data.projectors.size(); ++j) {
      std::vector<SiteLabel> joint =
          merge_labels(data.supports[i], data.supports[j]);
      joint.erase(std::unique(joint.begin(), joint.end()), joint.end());
      if (joint.size() == data.supports[i].size() + data.supports[j].size())
        continue;  // disjoint supports commute identically
      DenseOperator Pi = embed(data.projectors[i], joint, d);
      DenseOperator Pj = embed(data.projectors[j], joint, d);
      data.max_commutator_residual =
          std::max(data.max_commutator_residual,
                   (Pi.matrix() * Pj.matrix() - Pj.matrix() * Pi.matrix()).norm());
    }
  data.spectrum_check = data.max_projector_residual <= kNumTol &&
                        data.max_commutator_residual <= kNumTol;
  return data;
}

PepuBuildResult build_pepu_from_qca(const Channel& qca, int r,
                                    std::uint64_t seed, double svd_threshold,
                                    double qca_tol) {
  const Lattice& lat = qca.lattice();
  if (lat.spatial_dim() != 1)
    throw std::invalid_argument("build_pepu_from_qca: 1D lattices only");
  const Matrix& U = require_unitary(qca, "build_pepu_from_qca");
  if (heisenberg_range_residual(qca, r) > qca_tol)
    throw std::invalid_argument(
        "build_pepu_from_qca: input fails the range-r QCA check");

  const int d = lat.local_dim();
  const int N = lat.num_sites();
  const long dim2 = ipow(d, 2 * N);

  ParentHamiltonianData ham = parent_hamiltonian_data(qca, r);

  // Factor positions of each T_n inside the canonical (V then V') order.
  std::vector<std::vector<int>> positions(N);
  for (int n = 0; n < N; ++n)
    for (const SiteLabel& l : ham.supports[n])
      positions[n].push_back(l.kind == SiteKind::physical ? l.site : N + l.site);

  Rng rng = keyed_rng(seed, 0x70657075ull);
  Vector psi;
  int retries = 0;
  for (; retries < 8; ++retries) {
    // Random product state over (site, ancilla) pairs, assembled in the
    // canonical factor order.
    Vector v = Vector::Ones(1);
    std::vector<Vector> locals;
    for (int m = 0; m < N; ++m) locals.push_back(random_state(d * d, rng));
    // Fat order first…
    for (const Vector& lv : locals) {
      Vector next(v.size() * lv.size());
      for (long i = 0; i < v.size(); ++i)
        for (long j = 0; j < lv.size(); ++j) next(i * lv.size() + j) = v(i) * lv(j);
      v = std::move(next);
    }
    // …then permute (p0,q0,p1,q1,…) → (p0,…,p_{N-1},q0,…,q_{N-1}).
    std::vector<int> dims(2 * N, d);
    std::vector<int> perm(2 * N);
    for (int k = 0; k < N; ++k) {
      perm[k] = 2 * k;
      perm[N + k] = 2 * k + 1;
    }
    v = permute_vector_factors(v, dims, perm);

    for (int n = 0; n < N; ++n) {
      DenseOperator Tn = DenseOperator::identity(ham.supports[n], d) -
                         ham.projectors[n];
      v = apply_local(v, 2 * N, d, positions[n], Tn.matrix());
    }
    if (v.norm() >= 1e-6) {
      psi = std::move(v);
      break;
    }
  }
  if (psi.size() == 0)
    throw std::runtime_error(
        "build_pepu_from_qca: all sampled product states were annihilated");
  const int retries_used = retries;
  psi.normalize();

  // Regroup into fat sites (p_m, q_m) for the left-to-right SVD sweep.
  {
    std::vector<int> dims(2 * N, d);
    std::vector<int> perm(2 * N);
    for (int k = 0; k < N; ++k) {
      perm[2 * k] = k;
      perm[2 * k + 1] = N + k;
    }
    psi = permute_vector_factors(psi, dims, perm);
  }

  std::vector<int> cut_ranks;
  const int fat = d * d;
  std::vector<Tensor> mps;  // [Dl, fat, Dr]
  Matrix rest(1, dim2);
  for (long i = 0; i < dim2; ++i) rest(0, i) = psi(i);
  long dl = 1;
  for (int m = 0; m < N - 1; ++m) {
    const long cols = rest.cols() / fat;
    Matrix block(dl * fat, cols);
    for (long row = 0; row < dl; ++row)
      for (int f = 0; f < fat; ++f)
        block.row(row * fat + f) = rest.block(row, f * cols, 1, cols);
    ThinSvd svd = svd_truncated(block, svd_threshold);
    const long rank = static_cast<long>(svd.s.size());
    cut_ranks.push_back(static_cast<int>(rank));

    Tensor site({static_cast<int>(dl), fat, static_cast<int>(rank)});
    for (long row = 0; row < dl; ++row)
      for (int f = 0; f < fat; ++f)
        for (long k = 0; k < rank; ++k)
          site.at({static_cast<int>(row), f, static_cast<int>(k)}) =
              svd.u(row * fat + f, k);
    mps.push_back(std::move(site));

    Matrix carry(rank, cols);
    for (long k = 0; k < rank; ++k) carry.row(k) = svd.s[k] * svd.vdag.row(k);
    rest = std::move(carry);
    dl = rank;
  }
  {
    Tensor site({static_cast<int>(dl), fat, 1});
    for (long row = 0; row < dl; ++row)
      for (int f = 0; f < fat; ++f)
        site.at({static_cast<int>(row), f, 0}) = rest(row, f);
    mps.push_back(std::move(site));
  }
  int bond_dimension = 1;
  for (int rk : cut_ranks) bond_dimension = std::max(bond_dimension, rk);

  // The CJS vector of a unitary has norm d^{N/2}; restore the scale.
  {
    auto& t0 = mps.front();
    const double scale = std::pow(double(d), N / 2.0);
    for (auto& z : t0.data()) z *= scale;
  }

  // MPS tensors [Dl, (p,q), Dr] → MPO site tensors. Open chains: interior
  // legs [out, in, left, right]; chain ends drop the trivial cap. Periodic
  // lattices keep a bond-dimension-1 leg on the wrap edge.
  const bool periodic = lat.boundary() == Boundary::periodic;
  std::vector<Tensor> site_tensors;
  for (int m = 0; m < N; ++m) {
    const Tensor& t = mps[m];
    const int Dl = t.dims()[0], Dr = t.dims()[2];
    // Split fat = p·d + q: tensor [Dl, p, q, Dr] then reorder.
    Tensor split({Dl, d, d, Dr}, t.data());
    Tensor ordered = split.permuted({1, 2, 0, 3});  // [out, in, left, right]

    const bool first = (m == 0), last = (m == N - 1);
    if (!periodic && first) {
      site_tensors.push_back(Tensor({d, d, Dr},
                                    ordered.permuted({0, 1, 3, 2}).data()));
    } else if (!periodic && last) {
      site_tensors.push_back(Tensor({d, d, Dl}, ordered.data()));
    } else if (periodic && first) {
      // Incident edges of site 0: (0,1) then (0,N-1) → legs [right, wrap].
      site_tensors.push_back(Tensor({d, d, Dr, 1},
                                    ordered.permuted({0, 1, 3, 2}).data()));
    } else if (periodic && last) {
      // Incident edges of site N-1: (0,N-1) then (N-2,N-1) → [wrap, left].
      Tensor with_wrap({d, d, 1, Dl}, ordered.data());
      site_tensors.push_back(std::move(with_wrap));
    } else {
      site_tensors.push_back(std::move(ordered));
    }
  }

  TensorNetworkOperator tno(lat, std::move(site_tensors));

  double residual = -1.0;
  if (ipow(d, N) <= dense_cap()) {
    DenseOperator dense = contract_to_dense(tno);
    // The construction fixes U only up to a global phase; align it and bake
    // the phase into the first site tensor so the stored network contracts
    // to U itself.
    cplx overlap = (dense.matrix().adjoint() * U).trace();
    cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1, 0);
    std::vector<Tensor> adjusted = tno.site_tensors();
    for (auto& z : adjusted.front().data()) z *= phase;
    tno = TensorNetworkOperator(lat, std::move(adjusted));
    residual = (phase * dense.matrix() - U).norm() / U.norm();
  }
  return PepuBuildResult{std::move(tno), std::move(cut_ranks), bond_dimension,
                         residual, seed, retries_used};
}

PredicateResult is_simple(const Channel& unitary_channel, double tol,
                          RegionPolicy policy) {
  require_unitary(unitary_channel, "is_simple");
  PredicateResult out;
  for (const SiteSet& A : sweep_regions(unitary_channel.lattice(), policy)) {
    RegionPartition part = partition(unitary_channel.lattice(), A);
    out.max_residual =
        std::max(out.max_residual, simpleness_residual(unitary_channel, part));
  }
  out.verdict = out.max_residual <= tol;
  return out;
}

double simpleness_residual(const Channel& unitary_channel,
                           const RegionPartition& part) {
  const Matrix& U = require_unitary(unitary_channel, "is_simple");
  const Lattice& lat = unitary_channel.lattice();
  const int d = lat.local_dim();
  const auto full = physical_labels(all_sites(lat));
  const double dimV = std::pow(double(d), double(lat.num_sites()));

  const SiteSet Abar = part.A_bar(), Bbar = part.B_bar();
  const auto basis_A = operator_basis(physical_labels(Abar), d);
  const auto basis_B = operator_basis(physical_labels(Bbar), d);

  // Precompute the conjugated basis elements and their one-sided traces.
  std::vector<Matrix> conj_A, conj_B;
  std::vector<DenseOperator> beta, gamma;
  SiteSet tr_beta = part.a;  // tr_{a,B̄} leaves A
  tr_beta.insert(tr_beta.end(), Bbar.begin(), Bbar.end());
  std::sort(tr_beta.begin(), tr_beta.end());
  SiteSet tr_gamma = Abar;  // tr_{Ā,b} leaves B
  tr_gamma.insert(tr_gamma.end(), part.b.begin(), part.b.end());
  std::sort(tr_gamma.begin(), tr_gamma.end());
  SiteSet tr_ab = part.a;
  tr_ab.insert(tr_ab.end(), part.b.begin(), part.b.end());
  std::sort(tr_ab.begin(), tr_ab.end());

  for (const auto& X : basis_A) {
    Matrix c = U * embed(X, full, d).matrix() * U.adjoint();
    beta.push_back(partial_trace(DenseOperator::on(full, d, c),
                                 physical_labels(tr_beta)));
    conj_A.push_back(std::move(c));
  }
  for (const auto& Y : basis_B) {
    Matrix c = U * embed(Y, full, d).matrix() * U.adjoint();
    gamma.push_back(partial_trace(DenseOperator::on(full, d, c),
                                  physical_labels(tr_gamma)));
    conj_B.push_back(std::move(c));
  }

  double worst = 0.0;
  const double xnorm = std::sqrt(std::pow(double(d), double(Abar.size())));
  const double ynorm = std::sqrt(std::pow(double(d), double(Bbar.size())));
  for (size_t i = 0; i < basis_A.size(); ++i)
    for (size_t j = 0; j < basis_B.size(); ++j) {
      DenseOperator lhs = partial_trace(
          DenseOperator::on(full, d, conj_A[i] * conj_B[j]),
          physical_labels(tr_ab));
      DenseOperator rhs = tensor_product(beta[i], gamma[j]);
      rhs *= 1.0 / dimV;
      worst = std::max(worst, (lhs - rhs).fnorm() / (xnorm * ynorm));
    }
  return worst;
}

long bond_dimension_bound(int d, int d_L) {
  if (d < 2) throw std::invalid_argument("bond_dimension_bound: d must be >= 2");
  if (d_L == 1) return ipow(d, 8);
  if (d_L == 2) return ipow(d, 16);
  throw std::invalid_argument("bond_dimension_bound: only d_L in {1, 2}");
}

}  // namespace qcatn
