#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qcatn/channel.hpp"
#include "qcatn/lattice.hpp"

namespace qcatn {

enum class RegionPolicy { singletons, blocks, all };

RegionPolicy region_policy_from_string(const std::string& s);
std::string to_string(RegionPolicy p);

/// Regions swept by the predicates. `blocks` (the default) is every A ∈ S
/// with |A| ≤ 2 plus all contiguous blocks; `all` enumerates S completely.
/// Throws if S is empty (lattice too small for the declared range).
std::vector<SiteSet> sweep_regions(const Lattice& lat, RegionPolicy policy);

struct PredicateResult {
  bool verdict = false;
  double max_residual = 0.0;
};

struct RegionResiduals {
  SiteSet A;
  double cpqc = 0.0;
  double lpqc = 0.0;
  double fqc = 0.0;
};

struct ClassificationReport {
  std::string channel_id;
  std::string lattice;
  double tolerance = 0.0;
  std::string region_policy;
  std::vector<RegionResiduals> per_region;
  bool is_cpqc = false;
  bool is_lpqc = false;
  bool is_fqc = false;
  bool is_unitary = false;
  bool is_qca = false;
  double max_cpqc_residual = 0.0;
  double max_lpqc_residual = 0.0;
  double max_fqc_residual = 0.0;
  double unitary_rank_ratio = 0.0;  // second eigenvalue of R over tr(R)
};

/// Raised when predicate outcomes contradict the guaranteed inclusions
/// (locality preserving ⊂ causality preserving, fQC = LPQC) — a tolerance or
/// implementation bug, never valid data.
struct TaxonomyInconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Choi-state criterion: tr_{a,B̄}(R) must factor as σ_{A,Ā'} ⊗ 1_{B̄'}.
PredicateResult is_cpqc(const Channel& ch, double tol,
                        RegionPolicy policy = RegionPolicy::blocks);
double cpqc_residual(const Channel& ch, const RegionPartition& part);

/// Heisenberg criterion (the defining property): every observable on A is
/// mapped into the closure Ā by the adjoint channel. Independent oracle for
/// is_cpqc; the two must agree on every input.
PredicateResult is_cpqc_heisenberg(const Channel& ch, double tol,
                                   RegionPolicy policy = RegionPolicy::blocks);
double cpqc_heisenberg_residual(const Channel& ch, const RegionPartition& part);

/// Choi-state criterion: tr_{a,b}(R) must factor as σ_{A,Ā'} ⊗ σ_{B,B̄'}.
PredicateResult is_lpqc(const Channel& ch, double tol,
                        RegionPolicy policy = RegionPolicy::blocks);
double lpqc_residual(const Channel& ch, const RegionPartition& part);

/// Multiplicative factorization of the adjoint on separated observables.
PredicateResult is_fqc(const Channel& ch, double tol,
                       RegionPolicy policy = RegionPolicy::blocks);
double fqc_residual(const Channel& ch, const RegionPartition& part);

/// Rank-one Choi state. Returns the rank ratio (second eigenvalue / trace).
struct UnitaryCheck {
  bool verdict = false;
  double rank_ratio = 0.0;
  std::optional<Matrix> unitary;
};
UnitaryCheck is_unitary(const Channel& ch, double tol);

/// All predicates plus the Theorem-2 consistency assertions.
ClassificationReport taxonomy(const Channel& ch, double tol = 1e-8,
                              RegionPolicy policy = RegionPolicy::blocks);

}  // namespace qcatn
