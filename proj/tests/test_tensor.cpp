#include <doctest.h>

#include "qcatn/random.hpp"
#include "qcatn/tensor.hpp"

using namespace qcatn;

TEST_CASE("permutation round-trips") {
  Rng rng = keyed_rng(3, 0);
  Tensor t({2, 3, 4});
  for (auto& z : t.data()) z = cplx(double(rng() % 97), double(rng() % 89));
  Tensor p = t.permuted({2, 0, 1});
  CHECK(p.dims() == std::vector<int>{4, 2, 3});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 4; ++k) CHECK(p.at({k, i, j}) == t.at({i, j, k}));
  Tensor back = p.permuted({1, 2, 0});
  for (long i = 0; i < t.size(); ++i) CHECK(back.data()[i] == t.data()[i]);
}

TEST_CASE("contraction agrees with explicit summation") {
  Rng rng = keyed_rng(5, 0);
  Tensor a({2, 3, 2});
  Tensor b({3, 2, 4});
  std::normal_distribution<double> g(0, 1);
  for (auto& z : a.data()) z = cplx(g(rng), g(rng));
  for (auto& z : b.data()) z = cplx(g(rng), g(rng));

  // contract a's legs (1,2) with b's legs (0,1) -> result [a0, b2]
  Tensor c = contract(a, {1, 2}, b, {0, 1});
  REQUIRE(c.dims() == std::vector<int>{2, 4});
  for (int i = 0; i < 2; ++i)
    for (int l = 0; l < 4; ++l) {
      cplx acc(0, 0);
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 2; ++k) acc += a.at({i, j, k}) * b.at({j, k, l});
      CHECK(std::abs(c.at({i, l}) - acc) < 1e-12);
    }
}

TEST_CASE("matricize groups legs row-major") {
  Tensor t({2, 2});
  t.at({0, 1}) = cplx(1, 0);
  Matrix m = t.matricize({0});
  CHECK(m(0, 1) == cplx(1, 0));
  CHECK(m(1, 0) == cplx(0, 0));
}

TEST_CASE("vector factor permutation") {
  // |0⟩⊗|1⟩ on 2x2 factors: index 1; swapping factors gives index 2.
  Vector v = Vector::Zero(4);
  v(1) = 1.0;
  Vector w = permute_vector_factors(v, {2, 2}, {1, 0});
  CHECK(w(2) == cplx(1, 0));
}
