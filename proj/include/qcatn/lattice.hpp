#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcatn {

enum class Boundary { open, periodic };

using Coord = std::vector<int>;      // one entry per lattice axis, each in [0, M)
using SiteSet = std::vector<int>;    // sorted flat site indices (row-major)

/// Finite hypercubic qudit lattice: M sites per axis in d_L dimensions,
/// local dimension d, nearest-neighbor edges, channel range r.
class Lattice {
 public:
  Lattice(int spatial_dim, int linear_size, int local_dim, Boundary boundary,
          int range = 1);

  int spatial_dim() const { return d_L_; }
  int linear_size() const { return M_; }
  int local_dim() const { return d_; }
  Boundary boundary() const { return boundary_; }
  int range() const { return r_; }
  int num_sites() const { return num_sites_; }
  int coordination() const { return 2 * d_L_; }

  // Row-major flattening fixes the tensor-product order everywhere downstream.
  int site_index(const Coord& c) const;
  Coord site_coord(int index) const;
  bool valid_coord(const Coord& c) const;

  /// Graph distance (minimum edge count) under the boundary condition.
  int distance(const Coord& n, const Coord& m) const;
  int distance(int n, int m) const;

  /// Edges as index pairs (i, j) with i < j, each edge once.
  std::vector<std::pair<int, int>> edges() const;

  /// Count of edges with exactly one endpoint in A.
  int boundary_size(const SiteSet& A) const;

  /// Sites within graph distance k of A, excluding A itself.
  SiteSet neighborhood(const SiteSet& A, int k) const;

  /// Translate a site set by t (periodic lattices only).
  SiteSet translate(const SiteSet& A, const Coord& t) const;

  std::string describe() const;

 private:
  int d_L_;
  int M_;
  int d_;
  Boundary boundary_;
  int r_;
  int num_sites_;
};

/// The four-way split V = A ∪ a ∪ b ∪ B induced by a region A and range r:
/// a is the r-neighborhood of A, b the next shell (distance r+1..2r),
/// B the remainder. A is eligible (member of S) iff B is non-empty.
struct RegionPartition {
  SiteSet A;
  SiteSet a;
  SiteSet b;
  SiteSet B;
  bool in_S = false;

  SiteSet A_bar() const;  // A ∪ a
  SiteSet B_bar() const;  // B ∪ b
};

RegionPartition partition(const Lattice& lat, const SiteSet& A);

/// All A with |A| ≤ max_size and non-empty B, ordered lexicographically by
/// their sorted site-index lists.
std::vector<SiteSet> enumerate_S(const Lattice& lat, int max_size);

/// Contiguous axis-aligned 1D blocks (all lengths, all positions) that are in
/// S; for d_L ≥ 2 this enumerates 1×…×k boxes along the first axis.
std::vector<SiteSet> contiguous_blocks_in_S(const Lattice& lat);

}  // namespace qcatn
