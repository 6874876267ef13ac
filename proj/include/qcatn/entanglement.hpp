#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcatn/channel.hpp"
#include "qcatn/dense_operator.hpp"
#include "qcatn/lattice.hpp"

namespace qcatn {

/// −Σ λ log2 λ from a spectrum; eigenvalues in [−1e-12, 0) are clamped,
/// anything more negative is an error. Bits throughout.
double entropy_from_spectrum(const std::vector<double>& eigenvalues);

/// Von Neumann entropy of a density operator (PSD, trace 1 within kNumTol).
double von_neumann_entropy(const DenseOperator& rho);

/// Entanglement entropy of a pure state across (labels `A` | rest).
double entanglement_entropy(const DenseOperator& psi,
                            const std::vector<SiteLabel>& A);

/// Pure-state route on a bare vector: factors of dimension d, entropy across
/// (factor positions in A | rest). Cheap — never forms the full projector.
double entanglement_entropy_vec(const Vector& psi, int num_factors, int d,
                                const std::vector<int>& A_positions);

/// I(A : rest) = S_A + S_rest − S_total of a (mixed) state.
double mutual_information(const DenseOperator& rho,
                          const std::vector<SiteLabel>& A);

/// Mutual information of ⊗_k blocks[k] between the A labels and the rest,
/// evaluated blockwise (mutual information is additive over tensor factors).
double mutual_information_blocks(const std::vector<DenseOperator>& blocks,
                                 const std::vector<SiteLabel>& A);

struct ArakiLiebCheck {
  bool holds = false;
  double slack = 0.0;  // I(A:B) + 2 S(a) − I(Aa:B)
};

/// Verifies I(Aa:B) ≤ I(A:B) + 2 S(a) on the given state; the three label
/// sets must be disjoint subsets of the state's support.
ArakiLiebCheck araki_lieb_bound_check(const DenseOperator& rho,
                                      const std::vector<SiteLabel>& A,
                                      const std::vector<SiteLabel>& a,
                                      const std::vector<SiteLabel>& B);

enum class AreaLawMetric { entanglement, mutual_information };
enum class ProductSampler { haar, plus_states, domain_wall };
enum class AreaLawVerdict { consistent_with_area_law, violating, inconclusive };

std::string to_string(AreaLawMetric m);
std::string to_string(AreaLawVerdict v);
std::string to_string(ProductSampler s);

struct AreaLawEntry {
  int M = 0;
  SiteSet A;
  int boundary = 0;
  double value = 0.0;  // bits
};

struct AreaLawReport {
  std::string channel_family;
  std::string metric;
  std::vector<int> sizes;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<AreaLawEntry> per_region;
  std::vector<double> per_size_c;  // max value/boundary at each size
  double fitted_c = 0.0;           // max over sizes
  std::optional<double> c_ref;     // theory bound when the family has one
  AreaLawVerdict verdict = AreaLawVerdict::inconclusive;
  std::string disclaimer =
      "empirical consistency at the tested sizes and sampled product states; "
      "not a proof";
};

struct AreaLawConfig {
  AreaLawMetric metric = AreaLawMetric::entanglement;
  std::vector<int> sizes;
  int samples = 16;
  std::uint64_t seed = 1;
  ProductSampler sampler = ProductSampler::haar;
  std::optional<double> c_ref;  // pass log2(D) or the LPQC constant
};

/// Sweep contiguous regions over channel outputs on sampled product states.
/// Entanglement metric requires unitary channels (pure outputs).
AreaLawReport audit_area_law(const std::function<Channel(int)>& family,
                             const std::string& family_name,
                             const AreaLawConfig& config);

}  // namespace qcatn
