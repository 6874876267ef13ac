#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcatn/dense_operator.hpp"
#include "qcatn/lattice.hpp"
#include "qcatn/tensor.hpp"

namespace qcatn {

/// Labels for the doubled space V ∪ V' (physical block then ancilla block).
std::vector<SiteLabel> doubled_labels(const Lattice& lat);

/// Unnormalized maximally entangled vector |Φ⟩ = Σ_s |s⟩_V |s⟩_{V'};
/// ⟨Φ|Φ⟩ = d^N.
Vector max_entangled_vector(const Lattice& lat);

/// The unnormalized projector Φ = |Φ⟩⟨Φ| as an operator on V ∪ V'.
struct MaxEntangledResource {
  Lattice lattice;
  DenseOperator state;
};
MaxEntangledResource max_entangled_resource(const Lattice& lat);

/// Trace-preserving completely positive map on the full lattice, held
/// canonically as its Choi-Jamiolkowski state R. Storage is either the dense
/// matrix or a list of Choi vectors with R = Σ_i v_i v_i† (one vector per
/// Kraus operator); the vector form keeps low-rank channels cheap far beyond
/// the dense cap.
class Channel {
 public:
  /// Kraus operators may be supported on subsets of V; they are embedded.
  /// Throws if Σ K†K deviates from the identity.
  static Channel from_kraus(const Lattice& lat,
                            const std::vector<DenseOperator>& kraus,
                            double tol = kNumTol);
  static Channel from_kraus_matrices(const Lattice& lat,
                                     const std::vector<Matrix>& kraus,
                                     double tol = kNumTol);

  /// Validates R = R† ≥ 0 and tr_V(R) = identity on V'.
  static Channel from_cjs(const Lattice& lat, Matrix R, double tol = kNumTol);

  /// Unitary conjugation channel ρ ↦ UρU†. U must be unitary within tol.
  static Channel from_unitary(const Lattice& lat, Matrix U, double tol = kNumTol);

  static Channel identity(const Lattice& lat);

  const Lattice& lattice() const { return lattice_; }
  long hilbert_dim() const;  // d^N
  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  bool has_dense() const { return dense_.has_value(); }
  bool has_vectors() const { return !choi_vectors_.empty(); }
  const std::vector<Vector>& choi_vectors() const { return choi_vectors_; }

  /// Materialize R as a matrix / operator on V ∪ V' (subject to dense cap).
  Matrix cjs_matrix() const;
  DenseOperator cjs_operator() const;
  cplx cjs_trace() const;

  /// tr_C(R) without materializing R when the vector form is held.
  DenseOperator cjs_partial_trace(const std::vector<SiteLabel>& C) const;

  /// Schrodinger action E(ρ) = tr_{V'}(ρ_{V'}^T R); ρ must live on all of V.
  DenseOperator apply(const DenseOperator& rho) const;

  /// Heisenberg action, the Hilbert-Schmidt adjoint; unital.
  DenseOperator adjoint_apply(const DenseOperator& X) const;

  /// Kraus view, derived by eigendecomposition of R when needed.
  std::vector<Matrix> kraus_matrices() const;

  /// Stored unitary when the channel was built from one.
  const std::optional<Matrix>& unitary_matrix() const { return unitary_; }

  /// Largest k eigenvalues of R (descending). Cheap for the vector form.
  std::vector<double> cjs_top_eigenvalues(int k) const;

  double trace_preservation_residual() const;
  double hermiticity_residual() const;
  double min_cjs_eigenvalue() const;

 private:
  Channel(Lattice lat) : lattice_(std::move(lat)) {}

  Lattice lattice_;
  std::optional<Matrix> dense_;
  std::vector<Vector> choi_vectors_;
  std::optional<Matrix> unitary_;
  std::string id_ = "channel";
};

/// CJS-weighted mixture Σ w_i E_i; weights must be a probability vector.
Channel convex_combine(const std::vector<double>& weights,
                       const std::vector<Channel>& channels);

/// Stinespring-dilated channel: `fat_unitary` is a unitary channel on the
/// lattice of (physical ⊗ ancilla) pairs — local dimension d² with the fat
/// index p·d + a — and the ancillas start in `ancilla_init` (default |1⟩).
/// The result acts on the physical lattice with local dimension d.
Channel dilated_channel(const Channel& fat_unitary, int physical_dim,
                        std::optional<Vector> ancilla_init = std::nullopt);

}  // namespace qcatn
