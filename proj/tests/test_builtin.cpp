#include <doctest.h>

#include "qcatn/builtin_channels.hpp"
#include "qcatn/linalg.hpp"
#include "qcatn/pauli.hpp"
#include "qcatn/random.hpp"

using namespace qcatn;

namespace {
Lattice qubit_chain(int M, Boundary b = Boundary::open) {
  return Lattice(1, M, 2, b);
}

DenseOperator full_density(const Lattice& lat, const Matrix& rho) {
  SiteSet all(lat.num_sites());
  for (int n = 0; n < lat.num_sites(); ++n) all[n] = n;
  return DenseOperator::on(physical_labels(all), lat.local_dim(), rho);
}
}  // namespace

TEST_CASE("example1 mixes the identity with a global flip") {
  Lattice lat = qubit_chain(4);
  Channel ch = example1(lat);

  Matrix rho = Matrix::Zero(16, 16);
  rho(0, 0) = 1.0;  // |0000⟩⟨0000|
  Matrix out = ch.apply(full_density(lat, rho)).matrix();
  Matrix expected = Matrix::Zero(16, 16);
  expected(0, 0) = 0.5;
  expected(15, 15) = 0.5;
  CHECK((out - expected).norm() < 1e-12);
  CHECK_THROWS(example1(Lattice(1, 4, 3, Boundary::open)));
}

TEST_CASE("example2 structure at M=4") {
  Lattice lat = qubit_chain(4, Boundary::periodic);
  Example2Data data = example2_data(lat);
  const int N = 4;

  SUBCASE("pairing and weights") {
    auto pairs = example3_pairs(lat);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == std::pair<int, int>{0, 2});
    CHECK(pairs[1] == std::pair<int, int>{1, 3});
    CHECK(data.sum_abs_c == doctest::Approx(std::pow(2.0, 1.0)));
    CHECK(data.k_N == doctest::Approx(1.0 / (16.0 * 2.0)));
  }

  SUBCASE("every single-site trace of S vanishes") {
    DenseOperator S = DenseOperator::on(doubled_labels(lat), 2, data.S);
    for (int n = 0; n < N; ++n) {
      auto tr_phys = partial_trace(S, {{n, SiteKind::physical}});
      CHECK(tr_phys.fnorm() <= 1e-10);
      auto tr_anc = partial_trace(S, {{n, SiteKind::ancilla}});
      CHECK(tr_anc.fnorm() <= 1e-10);
    }
  }

  SUBCASE("k_N saturates the operator-norm budget") {
    const double norm = op_norm_inf(data.S);
    CHECK(norm <= 1.0 / 16.0 + 1e-12);
    CHECK(norm == doctest::Approx(1.0 / 16.0));  // commuting strings saturate
  }

  SUBCASE("R is a valid CJS") {
    Channel ch = example2(lat);  // construction validates R ≥ 0, tr_V R = 1
    CHECK(ch.trace_preservation_residual() <= 1e-10);
    CHECK(ch.min_cjs_eigenvalue() >= -1e-10);
  }

  CHECK_THROWS(example2(qubit_chain(4)));  // needs periodic boundaries
}

TEST_CASE("example3 CJS factorizes over the half-shift pairs") {
  Lattice lat = qubit_chain(4);
  Channel ch = example3(lat);
  auto pairs = example3_pairs(lat);
  REQUIRE(pairs.size() == 2);

  // ⊗ pairs of the (trace-d²) pair factors reproduces the full CJS.
  DenseOperator expected =
      tensor_product(4.0 * example3_pair_cjs_normalized(lat, pairs[0].first,
                                                        pairs[0].second),
                     4.0 * example3_pair_cjs_normalized(lat, pairs[1].first,
                                                        pairs[1].second));
  CHECK((ch.cjs_matrix() - expected.matrix()).norm() < 1e-10);

  SUBCASE("pair factor is the even mixture of two orthogonal Bell products") {
    DenseOperator pair = example3_pair_cjs_normalized(lat, 0, 2);
    CHECK(pair.is_positive_semidefinite());
    CHECK(pair.is_trace_one());
    auto eg = eigh(pair.matrix());
    CHECK(eg.eigenvalues[0] == doctest::Approx(0.5));
    CHECK(eg.eigenvalues[1] == doctest::Approx(0.5));
    CHECK(std::abs(eg.eigenvalues[2]) < 1e-12);
  }
  CHECK_THROWS(example3(qubit_chain(5)));  // odd M
}

TEST_CASE("shift unitary is the cyclic site permutation") {
  Lattice lat = qubit_chain(4, Boundary::periodic);
  Matrix u = shift_unitary_matrix(lat);
  CHECK((u * u.adjoint() - Matrix::Identity(16, 16)).norm() < 1e-14);
  // |0001⟩ (site 3 excited) → |1000⟩ (site 0 excited).
  Vector in = Vector::Zero(16), expect = Vector::Zero(16);
  in(1) = 1.0;
  expect(8) = 1.0;
  CHECK((u * in - expect).norm() < 1e-14);
  CHECK_THROWS(shift_unitary_matrix(qubit_chain(4)));
}

TEST_CASE("brickwork layers") {
  Lattice lat = qubit_chain(4);
  Rng rng = keyed_rng(311, 0);
  Matrix gate = haar_unitary(4, rng);
  Matrix u1 = brickwork_unitary_matrix(lat, gate, 1);
  Matrix u2 = brickwork_unitary_matrix(lat, gate, 2);
  CHECK((u1 * u1.adjoint() - Matrix::Identity(16, 16)).norm() < 1e-12);
  CHECK((u2 * u2.adjoint() - Matrix::Identity(16, 16)).norm() < 1e-12);
  // One layer at M=4 is gate(0,1) · gate(2,3); the second layer adds (1,2).
  Matrix expect1 = embed_two_site_gate(lat, gate, 2, 3) *
                   embed_two_site_gate(lat, gate, 0, 1);
  CHECK((u1 - expect1).norm() < 1e-12);
  Matrix expect2 = embed_two_site_gate(lat, gate, 1, 2) * expect1;
  CHECK((u2 - expect2).norm() < 1e-12);
}

TEST_CASE("long-range swap exchanges the chain ends") {
  Lattice lat = qubit_chain(4);
  Channel ch = long_range_swap(lat);
  const Matrix& u = *ch.unitary_matrix();
  // |1000⟩ → |0001⟩.
  Vector in = Vector::Zero(16), expect = Vector::Zero(16);
  in(8) = 1.0;
  expect(1) = 1.0;
  CHECK((u * in - expect).norm() < 1e-14);
}

TEST_CASE("random channels are CPTP") {
  Lattice lat = qubit_chain(2);
  for (int trial = 0; trial < 5; ++trial) {
    Channel ch = random_channel(lat, 2 + trial % 3, 900 + trial);
    CHECK(ch.trace_preservation_residual() <= 1e-9);
    // Same seed reproduces the same channel.
    Channel again = random_channel(lat, 2 + trial % 3, 900 + trial);
    CHECK((ch.cjs_matrix() - again.cjs_matrix()).norm() == 0.0);
  }
}
