#include <doctest.h>

#include "qcatn/builtin_channels.hpp"
#include "qcatn/pauli.hpp"
#include "qcatn/random.hpp"
#include "qcatn/tn.hpp"

using namespace qcatn;

namespace {

Lattice qubit_chain(int M, Boundary b = Boundary::open) {
  return Lattice(1, M, 2, b);
}

/// D=1 MPO of single-site operators on an open chain.
TensorNetworkOperator product_mpo(const Lattice& lat,
                                  const std::vector<Matrix>& ops) {
  const int d = lat.local_dim();
  std::vector<Tensor> sites;
  for (int n = 0; n < lat.num_sites(); ++n) {
    const bool first = n == 0, last = n == lat.num_sites() - 1;
    std::vector<int> dims = {d, d};
    if (!first) dims.push_back(1);
    if (!last) dims.push_back(1);
    Tensor t(dims);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        t.data()[p * d * 1 + q * 1] = ops[n](p, q);
    sites.push_back(std::move(t));
  }
  return TensorNetworkOperator(lat, std::move(sites));
}

/// Ring MPO for the cyclic shift: D = d, B[n](p,q,a,b) = δ(p,a) δ(q,b).
/// Site legs follow ascending incident-edge order.
TensorNetworkOperator shift_ring_mpo(const Lattice& lat) {
  const int d = lat.local_dim();
  const int M = lat.num_sites();
  std::vector<Tensor> sites;
  for (int n = 0; n < M; ++n) {
    // Interior site n: legs [out,in,left=e(n-1,n),right=e(n,n+1)];
    // site 0: [out,in,right,wrap]; site M-1: [out,in,wrap,left].
    // Each bond carries the input digit of the site on its lesser end, so
    // B(p, q, left, right) = δ(p, left) δ(right, q). Leg order follows the
    // ascending-edge convention: site 0 is [out,in,right,wrap], site M-1 is
    // [out,in,wrap,left], interior sites are [out,in,left,right].
    Tensor t({d, d, d, d});
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        if (n == 0 || n == M - 1)
          t.at({p, q, q, p}) = 1.0;
        else
          t.at({p, q, p, q}) = 1.0;
      }
    sites.push_back(std::move(t));
  }
  return TensorNetworkOperator(lat, std::move(sites));
}

/// Independent contraction oracle: brute-force sum over all bond
/// configurations (no shared code with contract_to_dense).
Matrix brute_force_contract(const TensorNetworkOperator& tno) {
  const Lattice& lat = tno.lattice();
  const int d = lat.local_dim();
  const int N = lat.num_sites();
  long dim = 1;
  for (int n = 0; n < N; ++n) dim *= d;
  const auto& edges = tno.edges();
  const auto& bdims = tno.bond_dims();

  Matrix out = Matrix::Zero(dim, dim);
  std::vector<int> cfg(edges.size(), 0);
  bool done = edges.empty();
  auto advance = [&]() {
    for (int e = static_cast<int>(edges.size()) - 1; e >= 0; --e) {
      if (++cfg[e] < bdims[e]) return true;
      cfg[e] = 0;
    }
    return false;
  };
  std::vector<int> pd(N), qd(N);
  do {
    for (long p = 0; p < dim; ++p) {
      long pp = p;
      for (int k = N - 1; k >= 0; --k) {
        pd[k] = static_cast<int>(pp % d);
        pp /= d;
      }
      for (long q = 0; q < dim; ++q) {
        long qq = q;
        for (int k = N - 1; k >= 0; --k) {
          qd[k] = static_cast<int>(qq % d);
          qq /= d;
        }
        cplx term(1, 0);
        for (int n = 0; n < N && term != cplx(0, 0); ++n) {
          std::vector<int> idx = {pd[n], qd[n]};
          for (int e : tno.incident_edges(n)) idx.push_back(cfg[e]);
          term *= tno.site_tensors()[n].at(idx);
        }
        out(p, q) += term;
      }
    }
  } while (!done && advance());
  return out;
}

}  // namespace

TEST_CASE("all-identity and product MPOs contract to their tensor products") {
  Lattice lat = qubit_chain(4);
  SUBCASE("identity") {
    std::vector<Matrix> ids(4, Matrix::Identity(2, 2));
    auto dense = contract_to_dense(product_mpo(lat, ids));
    CHECK((dense.matrix() - Matrix::Identity(16, 16)).norm() < 1e-14);
  }
  SUBCASE("single-site unitaries") {
    Rng rng = keyed_rng(511, 0);
    std::vector<Matrix> us;
    Matrix expect = Matrix::Identity(1, 1);
    for (int n = 0; n < 4; ++n) {
      us.push_back(haar_unitary(2, rng));
      Matrix next(expect.rows() * 2, expect.cols() * 2);
      for (long i = 0; i < expect.rows(); ++i)
        for (long j = 0; j < expect.cols(); ++j)
          next.block(i * 2, j * 2, 2, 2) = expect(i, j) * us.back();
      expect = std::move(next);
    }
    auto dense = contract_to_dense(product_mpo(lat, us));
    CHECK((dense.matrix() - expect).norm() < 1e-12);
  }
}

TEST_CASE("random D=2 MPO: contraction agrees with bond enumeration") {
  Lattice lat = qubit_chain(4);
  Rng rng = keyed_rng(523, 0);
  std::normal_distribution<double> g(0, 1);
  std::vector<Tensor> sites;
  for (int n = 0; n < 4; ++n) {
    std::vector<int> dims = {2, 2};
    if (n > 0) dims.push_back(2);
    if (n < 3) dims.push_back(2);
    Tensor t(dims);
    for (auto& z : t.data()) z = cplx(g(rng), g(rng));
    sites.push_back(std::move(t));
  }
  TensorNetworkOperator tno(lat, std::move(sites));
  auto fast = contract_to_dense(tno);
  Matrix slow = brute_force_contract(tno);
  CHECK((fast.matrix() - slow).norm() <= 1e-12 * std::max(1.0, slow.norm()));
}

TEST_CASE("hand-built ring MPO with D=2 reproduces the cyclic shift") {
  for (int M : {4, 5, 6}) {
    Lattice lat = qubit_chain(M, Boundary::periodic);
    auto ring = shift_ring_mpo(lat);
    CHECK(ring.max_bond_dim() == 2);
    auto dense = contract_to_dense(ring);
    CHECK((dense.matrix() - shift_unitary_matrix(lat)).norm() < 1e-12);
  }
}

TEST_CASE("heisenberg range residual separates QCA from non-QCA") {
  CHECK(heisenberg_range_residual(shift_qca(qubit_chain(6, Boundary::periodic)),
                                  1) <= 1e-12);
  CHECK(heisenberg_range_residual(long_range_swap(qubit_chain(4)), 1) > 0.1);
  Rng rng = keyed_rng(541, 0);
  Matrix gate = haar_unitary(4, rng);
  CHECK(heisenberg_range_residual(
            brickwork_qca(qubit_chain(4), gate, 1), 1) <= 1e-12);
  // Two brickwork layers are a range-2 automaton: range-1 fails at M=6,
  // range-2 passes.
  Channel two = brickwork_qca(qubit_chain(6), gate, 2);
  CHECK(heisenberg_range_residual(two, 1) > 0.01);
  CHECK(heisenberg_range_residual(two, 2) <= 1e-12);
}

TEST_CASE("parent-Hamiltonian projectors: local, idempotent, commuting") {
  Channel shift = shift_qca(qubit_chain(4, Boundary::periodic));
  auto data = parent_hamiltonian_data(shift, 1);
  CHECK(data.spectrum_check);
  CHECK(data.max_projector_residual <= 1e-10);
  CHECK(data.max_commutator_residual <= 1e-10);
  REQUIRE(data.projectors.size() == 4);
  for (int n = 0; n < 4; ++n) {
    // Support: ball(n,1) physical plus the matching ancilla.
    CHECK(data.supports[n].size() == 4);  // 3 physical + 1 ancilla
    int ancillas = 0;
    for (const auto& l : data.supports[n])
      if (l.kind == SiteKind::ancilla) {
        ++ancillas;
        CHECK(l.site == n);
      }
    CHECK(ancillas == 1);
  }
}

TEST_CASE("PEPU extraction from QCA fixtures") {
  SUBCASE("product unitary gives bond dimension 1") {
    Lattice lat = qubit_chain(4);
    auto result = build_pepu_from_qca(product_unitary(lat, pauli_x()), 1, 7);
    CHECK(result.bond_dimension == 1);
    CHECK(result.reconstruction_residual >= 0);
    CHECK(result.reconstruction_residual <= 1e-8);
  }
  SUBCASE("cyclic shift at M=6: D ≤ 4, reconstruction matches the ring oracle") {
    Lattice lat = qubit_chain(6, Boundary::periodic);
    Channel shift = shift_qca(lat);
    auto result = build_pepu_from_qca(shift, 1, 7);
    CHECK(result.bond_dimension <= 4);
    CHECK(result.reconstruction_residual <= 1e-8);
    auto dense = contract_to_dense(result.tno);
    Matrix oracle = contract_to_dense(shift_ring_mpo(lat)).matrix();
    CHECK((dense.matrix() - oracle).norm() <= 1e-8 * oracle.norm());
  }
  SUBCASE("one-layer brickwork reconstructs to the exact unitary") {
    Lattice lat = qubit_chain(4);
    Rng rng = keyed_rng(547, 0);
    Channel bw = brickwork_qca(lat, haar_unitary(4, rng), 1);
    auto result = build_pepu_from_qca(bw, 1, 11);
    CHECK(result.reconstruction_residual <= 1e-8);
    auto dense = contract_to_dense(result.tno);
    CHECK((dense.matrix() - *bw.unitary_matrix()).norm() <=
          1e-8 * bw.unitary_matrix()->norm());
  }
  SUBCASE("non-QCA inputs are rejected") {
    CHECK_THROWS(build_pepu_from_qca(long_range_swap(qubit_chain(4)), 1, 3));
  }
  SUBCASE("deterministic under a fixed seed") {
    Lattice lat = qubit_chain(4);
    Channel ch = product_unitary(lat, pauli_x());
    auto r1 = build_pepu_from_qca(ch, 1, 99);
    auto r2 = build_pepu_from_qca(ch, 1, 99);
    REQUIRE(r1.tno.site_tensors().size() == r2.tno.site_tensors().size());
    for (size_t n = 0; n < r1.tno.site_tensors().size(); ++n)
      CHECK(r1.tno.site_tensors()[n].data() == r2.tno.site_tensors()[n].data());
  }
}

TEST_CASE("simpleness: QCA pass, the long-range swap fails") {
  CHECK(is_simple(shift_qca(qubit_chain(6, Boundary::periodic)), 1e-8,
                  RegionPolicy::singletons)
            .verdict);
  CHECK(is_simple(product_unitary(qubit_chain(4), pauli_x()), 1e-8).verdict);
  auto bad = is_simple(long_range_swap(qubit_chain(4)), 1e-8);
  CHECK_FALSE(bad.verdict);
  CHECK(bad.max_residual > 0.01);
  CHECK_THROWS(is_simple(example1(qubit_chain(4)), 1e-8));  // non-unitary
}

TEST_CASE("a-priori bond dimension bounds") {
  CHECK(bond_dimension_bound(2, 2) == 65536);
  CHECK(bond_dimension_bound(2, 1) == 256);
  CHECK(bond_dimension_bound(3, 2) == 43046721);  // 3^16
  CHECK_THROWS(bond_dimension_bound(2, 3));
}

TEST_CASE("TNO validation") {
  Lattice lat = qubit_chain(2);
  // Mismatched bond dimensions across the shared edge must be rejected.
  Tensor a({2, 2, 2});
  Tensor b({2, 2, 3});
  CHECK_THROWS(TensorNetworkOperator(lat, {a, b}));
}
