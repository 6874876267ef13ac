#include <doctest.h>

#include "qcatn/lattice.hpp"
#include "qcatn/random.hpp"

using namespace qcatn;

namespace {
Lattice chain(int M, Boundary b, int r = 1) { return Lattice(1, M, 2, b, r); }
}  // namespace

TEST_CASE("graph distance") {
  CHECK(chain(4, Boundary::open).distance(0, 3) == 3);
  CHECK(chain(4, Boundary::periodic).distance(0, 3) == 1);
  Lattice grid(2, 4, 2, Boundary::open);
  CHECK(grid.distance({0, 0}, {1, 1}) == 2);
  CHECK(grid.distance({0, 0}, {0, 0}) == 0);
  CHECK_THROWS(grid.distance({0, 0}, {4, 0}));
}

TEST_CASE("distance symmetry and triangle inequality, exhaustive") {
  for (const Lattice& lat :
       {chain(6, Boundary::open), chain(6, Boundary::periodic),
        Lattice(2, 4, 2, Boundary::periodic)}) {
    for (int x = 0; x < lat.num_sites(); ++x)
      for (int y = 0; y < lat.num_sites(); ++y) {
        CHECK(lat.distance(x, y) == lat.distance(y, x));
        CHECK((lat.distance(x, y) == 0) == (x == y));
        for (int z = 0; z < lat.num_sites(); ++z)
          CHECK(lat.distance(x, z) <= lat.distance(x, y) + lat.distance(y, z));
      }
  }
}

TEST_CASE("region partition forced by the definitions") {
  SUBCASE("open M=4") {
    auto p = partition(chain(4, Boundary::open), {0});
    CHECK(p.a == SiteSet{1});
    CHECK(p.b == SiteSet{2});
    CHECK(p.B == SiteSet{3});
    CHECK(p.in_S);
  }
  SUBCASE("periodic M=4") {
    auto p = partition(chain(4, Boundary::periodic), {0});
    CHECK(p.a == SiteSet{1, 3});
    CHECK(p.b == SiteSet{2});
    CHECK(p.B.empty());
    CHECK_FALSE(p.in_S);
  }
  SUBCASE("periodic M=6") {
    auto p = partition(chain(6, Boundary::periodic), {0});
    CHECK(p.a == SiteSet{1, 5});
    CHECK(p.b == SiteSet{2, 4});
    CHECK(p.B == SiteSet{3});
    CHECK(p.in_S);
  }
  CHECK_THROWS(partition(chain(4, Boundary::open), {}));
}

TEST_CASE("partition covers the lattice with disjoint pieces") {
  for (const Lattice& lat :
       {chain(6, Boundary::open), chain(7, Boundary::periodic),
        Lattice(2, 3, 2, Boundary::open)}) {
    Rng rng = keyed_rng(7, 0);
    for (int trial = 0; trial < 20; ++trial) {
      SiteSet A;
      for (int n = 0; n < lat.num_sites(); ++n)
        if (rng() % 3 == 0) A.push_back(n);
      if (A.empty()) A.push_back(static_cast<int>(rng() % lat.num_sites()));
      auto p = partition(lat, A);

      std::vector<int> count(lat.num_sites(), 0);
      for (int n : p.A) ++count[n];
      for (int n : p.a) ++count[n];
      for (int n : p.b) ++count[n];
      for (int n : p.B) ++count[n];
      for (int c : count) CHECK(c == 1);  // pairwise disjoint, union = V

      // Ā ∪ B̄ = V with Ā ∩ B̄ = ∅.
      auto abar = p.A_bar(), bbar = p.B_bar();
      CHECK(abar.size() + bbar.size() == static_cast<size_t>(lat.num_sites()));
      for (int n : abar)
        CHECK(std::find(bbar.begin(), bbar.end(), n) == bbar.end());
    }
  }
}

TEST_CASE("partition equivariance under translations (periodic)") {
  Lattice lat = chain(7, Boundary::periodic);
  auto base = partition(lat, {0, 1});
  for (int t = 1; t < 7; ++t) {
    auto shifted = partition(lat, lat.translate({0, 1}, {t}));
    CHECK(shifted.a == lat.translate(base.a, {t}));
    CHECK(shifted.b == lat.translate(base.b, {t}));
    CHECK(shifted.B == lat.translate(base.B, {t}));
  }
}

TEST_CASE("boundary size counts cut edges") {
  CHECK(chain(6, Boundary::open).boundary_size({0, 1, 2}) == 1);
  CHECK(chain(6, Boundary::periodic).boundary_size({0, 1, 2}) == 2);

  Lattice grid(2, 4, 2, Boundary::open);
  SiteSet left;
  for (int n = 0; n < grid.num_sites(); ++n)
    if (grid.site_coord(n)[0] < 2) left.push_back(n);
  CHECK(left.size() == 8);
  CHECK(grid.boundary_size(left) == 4);
}

TEST_CASE("enumerate_S matches brute-force partition filtering") {
  SUBCASE("open M=4 singletons") {
    auto s = enumerate_S(chain(4, Boundary::open), 1);
    CHECK(s == std::vector<SiteSet>{{0}, {3}});
  }
  SUBCASE("open M=6 singletons") {
    CHECK(enumerate_S(chain(6, Boundary::open), 1).size() == 6);
  }
  SUBCASE("periodic M=4 has empty S") {
    CHECK(enumerate_S(chain(4, Boundary::periodic), 4).empty());
  }
  SUBCASE("agrees with direct filtering") {
    Lattice lat = chain(6, Boundary::periodic);
    auto s = enumerate_S(lat, 2);
    for (const auto& A : s) CHECK(partition(lat, A).in_S);
    int count = 0;  // brute force over all subsets of size <= 2
    for (int i = 0; i < 6; ++i)
      for (int j = i; j < 6; ++j) {
        SiteSet A = i == j ? SiteSet{i} : SiteSet{i, j};
        if (partition(lat, A).in_S) ++count;
      }
    CHECK(static_cast<int>(s.size()) == count);
  }
}

TEST_CASE("lattice constructor rejects bad parameters") {
  CHECK_THROWS(Lattice(1, 4, 1, Boundary::open));      // d < 2
  CHECK_THROWS(Lattice(1, 4, 2, Boundary::periodic, 2));  // r > M/4
  CHECK_THROWS(Lattice(0, 4, 2, Boundary::open));
  CHECK_NOTHROW(Lattice(1, 8, 2, Boundary::periodic, 2));
}
