#include <doctest.h>

#include "qcatn/dense_operator.hpp"
#include "qcatn/pauli.hpp"
#include "qcatn/random.hpp"

using namespace qcatn;

namespace {
SiteLabel phys(int n) { return {n, SiteKind::physical}; }
SiteLabel anc(int n) { return {n, SiteKind::ancilla}; }

DenseOperator single(int site, const Matrix& m) {
  return DenseOperator::on({phys(site)}, 2, m);
}
}  // namespace

TEST_CASE("canonical support ordering") {
  // Constructing with out-of-order support permutes the matrix accordingly:
  // X on site 1, Z on site 0, given in (1,0) order, equals Z⊗X in (0,1) order.
  Matrix zx(4, 4);
  zx.setZero();
  // X⊗Z in the (site1, site0) ordering: kron(X, Z)
  Matrix xz = Matrix::Zero(4, 4);
  xz.block(0, 2, 2, 2) = pauli_z();
  xz.block(2, 0, 2, 2) = pauli_z();
  DenseOperator op({phys(1), phys(0)}, {2, 2}, xz);
  CHECK(op.support() == std::vector<SiteLabel>{phys(0), phys(1)});
  DenseOperator expected =
      tensor_product(single(0, pauli_z()), single(1, pauli_x()));
  CHECK((op.matrix() - expected.matrix()).norm() < 1e-14);
}

TEST_CASE("physical factors precede ancillas") {
  auto prod = tensor_product(DenseOperator::on({anc(0)}, 2, pauli_x()),
                             DenseOperator::on({phys(1)}, 2, pauli_z()));
  CHECK(prod.support() == std::vector<SiteLabel>{phys(1), anc(0)});
}

TEST_CASE("tensor product basics") {
  auto xx = tensor_product(single(0, pauli_x()), single(1, pauli_x()));
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 3) = expect(1, 2) = expect(2, 1) = expect(3, 0) = 1.0;
  CHECK((xx.matrix() - expect).norm() < 1e-14);

  auto half = 0.5 * single(0, Matrix::Identity(2, 2));
  auto quarter = tensor_product(half, 0.5 * single(1, Matrix::Identity(2, 2)));
  CHECK((quarter.matrix() - 0.25 * Matrix::Identity(4, 4)).norm() < 1e-14);

  CHECK_THROWS(tensor_product(single(0, pauli_x()), single(0, pauli_z())));
}

TEST_CASE("trace multiplies under tensor products") {
  Rng rng = keyed_rng(11, 0);
  for (int trial = 0; trial < 25; ++trial) {
    Matrix p = ginibre(2, 2, rng), q = ginibre(2, 2, rng);
    auto pq = tensor_product(single(0, p), single(1, q));
    CHECK(std::abs(pq.trace() - p.trace() * q.trace()) < 1e-12);
  }
}

TEST_CASE("partial trace") {
  SUBCASE("Bell projector reduces to the maximally mixed state") {
    Vector bell(4);
    bell << 1, 0, 0, 1;
    bell /= std::sqrt(2.0);
    DenseOperator proj =
        DenseOperator::on({phys(0), phys(1)}, 2, Matrix(bell * bell.adjoint()));
    auto reduced = partial_trace(proj, {phys(1)});
    CHECK((reduced.matrix() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-14);
  }
  SUBCASE("product state traces factor-wise") {
    Rng rng = keyed_rng(13, 0);
    Matrix rho = random_density(2, rng), tau = ginibre(2, 2, rng);
    auto prod = tensor_product(single(0, rho), single(1, tau));
    auto left = partial_trace(prod, {phys(1)});
    CHECK((left.matrix() - tau.trace() * rho).norm() < 1e-12);
  }
  SUBCASE("composition: tracing factors one at a time") {
    Rng rng = keyed_rng(17, 0);
    for (int trial = 0; trial < 50; ++trial) {
      Matrix h = ginibre(8, 8, rng);
      h = (h + Matrix(h.adjoint())).eval();
      DenseOperator p = DenseOperator::on({phys(0), phys(1), phys(2)}, 2, h);
      auto two_step = partial_trace(partial_trace(p, {phys(2)}), {phys(1)});
      auto one_step = partial_trace(p, {phys(1), phys(2)});
      CHECK((two_step.matrix() - one_step.matrix()).norm() < 1e-12);
    }
  }
  SUBCASE("trace is preserved") {
    Rng rng = keyed_rng(19, 0);
    Matrix h = ginibre(8, 8, rng);
    DenseOperator p = DenseOperator::on({phys(0), phys(1), phys(2)}, 2, h);
    CHECK(std::abs(partial_trace(p, {phys(0), phys(2)}).trace() - p.trace()) <
          1e-12);
  }
  SUBCASE("errors on labels outside the support") {
    DenseOperator p = single(0, pauli_x());
    CHECK_THROWS(partial_trace(p, {phys(1)}));
  }
}

TEST_CASE("partial trace preserves positivity (sampled)") {
  Rng rng = keyed_rng(23, 0);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix rho = random_density(16, rng);
    DenseOperator p =
        DenseOperator::on({phys(0), phys(1), phys(2), phys(3)}, 2, rho);
    auto reduced = partial_trace(p, {phys(1), phys(3)});
    CHECK(reduced.is_positive_semidefinite(1e-9));
    CHECK(std::abs(reduced.trace() - cplx(1, 0)) < 1e-12);
  }
}

TEST_CASE("tensor then trace returns the other factor") {
  Rng rng = keyed_rng(29, 0);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix p = ginibre(2, 2, rng), q = ginibre(4, 4, rng);
    auto prod = tensor_product(single(0, p),
                               DenseOperator::on({phys(1), phys(2)}, 2, q));
    auto back = partial_trace(prod, {phys(1), phys(2)});
    CHECK((back.matrix() - q.trace() * p).norm() <= 1e-12 * q.norm() * 10);
  }
}

TEST_CASE("embed inserts identity factors") {
  auto x0 = single(0, pauli_x());
  auto full = embed(x0, {phys(0), phys(1)}, 2);
  auto expect = tensor_product(x0, single(1, Matrix::Identity(2, 2)));
  CHECK((full.matrix() - expect.matrix()).norm() < 1e-14);
  CHECK_THROWS(embed(full, {phys(0)}, 2));
}

TEST_CASE("dense cap is enforced and configurable") {
  const long original = dense_cap();
  set_dense_cap(8);
  std::vector<SiteLabel> four = {phys(0), phys(1), phys(2), phys(3)};
  CHECK_THROWS(DenseOperator::identity(four, 2));  // dim 16 > 8
  set_dense_cap(original);
  CHECK_NOTHROW(DenseOperator::identity(four, 2));
}

TEST_CASE("predicate queries") {
  auto z = single(0, pauli_z());
  CHECK(z.is_hermitian());
  CHECK_FALSE(z.is_positive_semidefinite());
  auto mix = 0.5 * single(0, Matrix::Identity(2, 2));
  CHECK(mix.is_positive_semidefinite());
  CHECK(mix.is_trace_one());
}
