#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcatn/channel.hpp"
#include "qcatn/classify.hpp"
#include "qcatn/dense_operator.hpp"
#include "qcatn/lattice.hpp"
#include "qcatn/tensor.hpp"

namespace qcatn {

/// Tensor-network operator (MPO in 1D, PEPO in general): one tensor per site
/// with legs [phys_out, phys_in, bonds…], bonds ordered by ascending global
/// edge index. Edge k of `edges()` carries bond dimension `bond_dims()[k]`.
class TensorNetworkOperator {
 public:
  TensorNetworkOperator(Lattice lat, std::vector<Tensor> site_tensors);

  const Lattice& lattice() const { return lattice_; }
  const std::vector<Tensor>& site_tensors() const { return site_tensors_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& bond_dims() const { return bond_dims_; }
  int max_bond_dim() const;

  /// Legs of site n: position 0 = phys_out, 1 = phys_in, then one leg per
  /// incident edge; returns the global edge index of each bond leg.
  std::vector<int> incident_edges(int site) const;

 private:
  Lattice lattice_;
  std::vector<Tensor> site_tensors_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> bond_dims_;
};

/// Contract all bonds; the result is the represented operator on V.
/// Refuses lattices whose total physical dimension exceeds the dense cap.
DenseOperator contract_to_dense(const TensorNetworkOperator& tno);

/// Max over single-site observables of how far U X_n U† leaks outside the
/// radius-r ball of n. Zero (to tolerance) iff U is a range-r QCA in the
/// per-site Heisenberg sense.
double heisenberg_range_residual(const Channel& unitary_channel, int r);

/// The commuting-projector structure behind the PEPU construction: local
/// projectors Q̃_n = (U⊗1) Q_n (U⊗1)† supported on ball(n, r) ∪ {n'}, whose
/// complements multiply to the projector onto the channel's CJS vector.
struct ParentHamiltonianData {
  std::vector<DenseOperator> projectors;        // Q̃_n, canonical site order
  std::vector<std::vector<SiteLabel>> supports; // support of each Q̃_n
  double max_projector_residual = 0.0;          // ‖Q̃² − Q̃‖
  double max_commutator_residual = 0.0;         // ‖[Q̃_n, Q̃_m]‖ over pairs
  bool spectrum_check = false;
};
ParentHamiltonianData parent_hamiltonian_data(const Channel& qca, int r);

struct PepuBuildResult {
  TensorNetworkOperator tno;
  std::vector<int> cut_ranks;       // Schmidt ranks across the chain cuts
  int bond_dimension = 1;           // max over cuts
  double reconstruction_residual = -1.0;  // relative, -1 when out of cap
  std::uint64_t seed = 0;
  int retries = 0;
};

/// Constructive QCA → MPO extraction: project a random product state with
/// Π_n (1 − Q̃_n) onto the CJS vector, then split it into an MPS by
/// sequential SVDs and reinterpret the site legs as (out, in) pairs.
/// 1D lattices only.
PepuBuildResult build_pepu_from_qca(const Channel& qca, int r,
                                    std::uint64_t seed = 1,
                                    double svd_threshold = 1e-10,
                                    double qca_tol = 1e-8);

/// Operational simpleness of a unitary channel:
/// tr_{a,b}(U ρ_Ā ρ_B̄ U†) = (1/d^N) tr_{a,B̄}(U ρ_Ā U†) tr_{Ā,b}(U ρ_B̄ U†)
/// over complete operator bases, for every swept A ∈ S.
PredicateResult is_simple(const Channel& unitary_channel, double tol,
                          RegionPolicy policy = RegionPolicy::blocks);
double simpleness_residual(const Channel& unitary_channel,
                           const RegionPartition& part);

/// A-priori bond-dimension bound of the construction: d^16 on a square
/// lattice, d^8 for chains (two tensors straddle each link, each acting on
/// z+1 doubled sites).
long bond_dimension_bound(int d, int d_L);

}  // namespace qcatn
