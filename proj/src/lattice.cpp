#include "qcatn/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <set>
#include <sstream>

namespace qcatn {

Lattice::Lattice(int spatial_dim, int linear_size, int local_dim,
                 Boundary boundary, int range)
    : d_L_(spatial_dim),
      M_(linear_size),
      d_(local_dim),
      boundary_(boundary),
      r_(range) {
  if (d_L_ < 1) throw std::invalid_argument("lattice: spatial dimension must be >= 1");
  if (M_ < 1) throw std::invalid_argument("lattice: linear size must be >= 1");
  if (d_ < 2) throw std::invalid_argument("lattice: local dimension must be >= 2");
  if (r_ < 1) throw std::invalid_argument("lattice: range must be >= 1");
  if (boundary_ == Boundary::periodic && 4 * r_ > M_)
    throw std::invalid_argument("lattice: periodic boundaries require r <= M/4");
  num_sites_ = 1;
  for (int k = 0; k < d_L_; ++k) num_sites_ *= M_;
}

bool Lattice::valid_coord(const Coord& c) const {
  if (static_cast<int>(c.size()) != d_L_) return false;
  for (int x : c)
    if (x < 0 || x >= M_) return false;
  return true;
}

int Lattice::site_index(const Coord& c) const {
  if (!valid_coord(c)) throw std::out_of_range("lattice: coordinate out of range");
  int idx = 0;
  for (int k = 0; k < d_L_; ++k) idx = idx * M_ + c[k];
  return idx;
}

Coord Lattice::site_coord(int index) const {
  if (index < 0 || index >= num_sites_)
    throw std::out_of_range("lattice: site index out of range");
  Coord c(d_L_);
  for (int k = d_L_ - 1; k >= 0; --k) {
    c[k] = index % M_;
    index /= M_;
  }
  return c;
}

int Lattice::distance(const Coord& n, const Coord& m) const {
  if (!valid_coord(n) || !valid_coord(m))
    throw std::out_of_range("lattice: coordinate out of range");
  int dist = 0;
  for (int k = 0; k < d_L_; ++k) {
    int dk = std::abs(n[k] - m[k]);
    if (boundary_ == Boundary::periodic) dk = std::min(dk, M_ - dk);
    dist += dk;
  }
  return dist;
}

int Lattice::distance(int n, int m) const {
  return distance(site_coord(n), site_coord(m));
}

std::vector<std::pair<int, int>> Lattice::edges() const {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < num_sites_; ++i) {
    Coord c = site_coord(i);
    for (int k = 0; k < d_L_; ++k) {
      Coord nb = c;
      nb[k] = c[k] + 1;
      if (nb[k] == M_) {
        if (boundary_ != Boundary::periodic || M_ == 2) continue;
        nb[k] = 0;
      }
      int j = site_index(nb);
      es.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return es;
}

int Lattice::boundary_size(const SiteSet& A) const {
  std::set<int> inA(A.begin(), A.end());
  int count = 0;
  for (auto [i, j] : edges()) {
    bool a = inA.count(i) > 0, b = inA.count(j) > 0;
    if (a != b) ++count;
  }
  return count;
}

SiteSet Lattice::neighborhood(const SiteSet& A, int k) const {
  std::set<int> inA(A.begin(), A.end());
  SiteSet out;
  for (int n = 0; n < num_sites_; ++n) {
    if (inA.count(n)) continue;
    int best = k + 1;
    for (int a : A) best = std::min(best, distance(n, a));
    if (best <= k) out.push_back(n);
  }
  return out;
}

SiteSet Lattice::translate(const SiteSet& A, const Coord& t) const {
  if (boundary_ != Boundary::periodic)
    throw std::invalid_argument("lattice: translation requires periodic boundaries");
  if (static_cast<int>(t.size()) != d_L_)
    throw std::invalid_argument("lattice: translation vector has wrong dimension");
  SiteSet out;
  for (int n : A) {
    Coord c = site_coord(n);
    for (int k = 0; k < d_L_; ++k) c[k] = ((c[k] + t[k]) % M_ + M_) % M_;
    out.push_back(site_index(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Lattice::describe() const {
  std::ostringstream os;
  os << d_L_ << "d,M=" << M_ << ",d=" << d_ << ","
     << (boundary_ == Boundary::open ? "open" : "periodic") << ",r=" << r_;
  return os.str();
}

SiteSet RegionPartition::A_bar() const {
  SiteSet out = A;
  out.insert(out.end(), a.begin(), a.end());
  std::sort(out.begin(), out.end());
  return out;
}

SiteSet RegionPartition::B_bar() const {
  SiteSet out = B;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

RegionPartition partition(const Lattice& lat, const SiteSet& A) {
  if (A.empty()) throw std::invalid_argument("partition: region A must be non-empty");
  for (int n : A)
    if (n < 0 || n >= lat.num_sites())
      throw std::out_of_range("partition: site index out of range");

  RegionPartition p;
  p.A = A;
  std::sort(p.A.begin(), p.A.end());
  p.A.erase(std::unique(p.A.begin(), p.A.end()), p.A.end());

  const int r = lat.range();
  p.a = lat.neighborhood(p.A, r);
  SiteSet a2 = lat.neighborhood(p.A, 2 * r);
  std::set_difference(a2.begin(), a2.end(), p.a.begin(), p.a.end(),
                      std::back_inserter(p.b));

  std::set<int> used(p.A.begin(), p.A.end());
  used.insert(p.a.begin(), p.a.end());
  used.insert(p.b.begin(), p.b.end());
  for (int n = 0; n < lat.num_sites(); ++n)
    if (!used.count(n)) p.B.push_back(n);

  p.in_S = !p.B.empty();
  return p;
}

std::vector<SiteSet> enumerate_S(const Lattice& lat, int max_size) {
  if (max_size < 1) throw std::invalid_argument("enumerate_S: max_size must be >= 1");
  max_size = std::min(max_size, lat.num_sites());

  std::vector<SiteSet> found;
  SiteSet cur;
  // Depth-first over increasing site indices emits subsets in lexicographic
  // order of their sorted index lists.
  auto rec = [&](auto&& self, int next) -> void {
    if (!cur.empty() && partition(lat, cur).in_S) found.push_back(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (int n = next; n < lat.num_sites(); ++n) {
      cur.push_back(n);
      self(self, n + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return found;
}

std::vector<SiteSet> contiguous_blocks_in_S(const Lattice& lat) {
  std::vector<SiteSet> found;
  const int M = lat.linear_size();
  const bool wrap = lat.boundary() == Boundary::periodic;
  const int max_len = wrap ? M - 1 : M;
  for (int len = 1; len <= max_len; ++len) {
    const int starts = wrap ? M : M - len + 1;
    for (int s = 0; s < starts; ++s) {
      SiteSet A;
      for (int k = 0; k < len; ++k) {
        Coord c(lat.spatial_dim(), 0);
        c[0] = (s + k) % M;
        A.push_back(lat.site_index(c));
      }
      std::sort(A.begin(), A.end());
      A.erase(std::unique(A.begin(), A.end()), A.end());
      if (partition(lat, A).in_S) found.push_back(A);
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

}  // namespace qcatn
