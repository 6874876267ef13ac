#include "qcatn/classify.hpp"

#include <algorithm>
#include <cmath>

#include "qcatn/linalg.hpp"
#include "qcatn/pauli.hpp"

namespace qcatn {

namespace {

double dpow(int d, size_t n) { return std::pow(double(d), double(n)); }

SiteSet all_sites(const Lattice& lat) {
  SiteSet all(lat.num_sites());
  for (int n = 0; n < lat.num_sites(); ++n) all[n] = n;
  return all;
}

template <typename ResidualFn>
PredicateResult sweep(const Channel& ch, double tol, RegionPolicy policy,
                      ResidualFn&& residual) {
  PredicateResult out;
  for (const SiteSet& A : sweep_regions(ch.lattice(), policy)) {
    RegionPartition part = partition(ch.lattice(), A);
    out.max_residual = std::max(out.max_residual, residual(ch, part));
  }
  out.verdict = out.max_residual <= tol;
  return out;
}

}  // namespace

RegionPolicy region_policy_from_string(const std::string& s) {
  if (s == "singletons") return RegionPolicy::singletons;
  if (s == "blocks") return RegionPolicy::blocks;
  if (s == "all") return RegionPolicy::all;
  throw std::invalid_argument("unknown region policy: " + s);
}

std::string to_string(RegionPolicy p) {
  switch (p) {
    case RegionPolicy::singletons: return "singletons";
    case RegionPolicy::blocks: return "blocks";
    case RegionPolicy::all: return "all";
  }
  return "?";
}

std::vector<SiteSet> sweep_regions(const Lattice& lat, RegionPolicy policy) {
  std::vector<SiteSet> regions;
  switch (policy) {
    case RegionPolicy::singletons:
      regions = enumerate_S(lat, 1);
      break;
    case RegionPolicy::blocks: {
      regions = enumerate_S(lat, 2);
      auto blocks = contiguous_blocks_in_S(lat);
      regions.insert(regions.end(), blocks.begin(), blocks.end());
      std::sort(regions.begin(), regions.end());
      regions.erase(std::unique(regions.begin(), regions.end()), regions.end());
      break;
    }
    case RegionPolicy::all:
      regions = enumerate_S(lat, lat.num_sites());
      break;
  }
  if (regions.empty())
    throw std::invalid_argument(
        "region sweep: S is empty — lattice too small for range r = " +
        std::to_string(lat.range()));
  return regions;
}

double cpqc_residual(const Channel& ch, const RegionPartition& part) {
  const int d = ch.lattice().local_dim();
  // T = tr_{a,B̄}(R), supported on A ∪ V'.
  SiteSet traced = part.a;
  const SiteSet Bbar = part.B_bar();
  traced.insert(traced.end(), Bbar.begin(), Bbar.end());
  DenseOperator T = ch.cjs_partial_trace(physical_labels(traced));

  const auto Bbar_anc = ancilla_labels(Bbar);
  DenseOperator sigma = partial_trace(T, Bbar_anc);
  sigma *= 1.0 / dpow(d, Bbar.size());
  DenseOperator model =
      tensor_product(sigma, DenseOperator::identity(Bbar_anc, d));
  return (T - model).fnorm() / T.fnorm();
}

double lpqc_residual(const Channel& ch, const RegionPartition& part) {
  const int d = ch.lattice().local_dim();
  // T = tr_{a,b}(R), supported on A ∪ B ∪ V'.
  SiteSet traced = part.a;
  traced.insert(traced.end(), part.b.begin(), part.b.end());
  DenseOperator T = ch.cjs_partial_trace(physical_labels(traced));

  const SiteSet Abar = part.A_bar(), Bbar = part.B_bar();
  // σ_{A,Ā'} = tr_{B,B̄'}(T)/d^{|B̄'|}, and symmetrically for B.
  auto traced_for_A = merge_labels(physical_labels(part.B), ancilla_labels(Bbar));
  DenseOperator sigma_A = partial_trace(T, traced_for_A);
  sigma_A *= 1.0 / dpow(d, Bbar.size());
  auto traced_for_B = merge_labels(physical_labels(part.A), ancilla_labels(Abar));
  DenseOperator sigma_B = partial_trace(T, traced_for_B);
  sigma_B *= 1.0 / dpow(d, Abar.size());

  DenseOperator model = tensor_product(sigma_A, sigma_B);
  return (T - model).fnorm() / T.fnorm();
}

double cpqc_heisenberg_residual(const Channel& ch, const RegionPartition& part) {
  const Lattice& lat = ch.lattice();
  const int d = lat.local_dim();
  const auto full = physical_labels(all_sites(lat));
  const SiteSet Abar = part.A_bar();
  SiteSet outside;
  std::set_difference(all_sites(lat).begin(), all_sites(lat).end(),
                      Abar.begin(), Abar.end(), std::back_inserter(outside));
  const auto outside_labels = physical_labels(outside);

  double worst = 0.0;
  for (const DenseOperator& X : operator_basis(physical_labels(part.A), d)) {
    DenseOperator Xfull = embed(X, full, d);
    DenseOperator Y = ch.adjoint_apply(Xfull);
    DenseOperator on_Abar = partial_trace(Y, outside_labels);
    on_Abar *= 1.0 / dpow(d, outside.size());
    DenseOperator model = embed(on_Abar, full, d);
    worst = std::max(worst, (Y - model).fnorm() / Xfull.fnorm());
  }
  return worst;
}

double fqc_residual(const Channel& ch, const RegionPartition& part) {
  const Lattice& lat = ch.lattice();
  const int d = lat.local_dim();
  const auto full = physical_labels(all_sites(lat));

  const auto basis_A = operator_basis(physical_labels(part.A), d);
  const auto basis_B = operator_basis(physical_labels(part.B), d);

  std::vector<DenseOperator> adj_A, adj_B;
  adj_A.reserve(basis_A.size());
  for (const auto& X : basis_A) adj_A.push_back(ch.adjoint_apply(embed(X, full, d)));
  adj_B.reserve(basis_B.size());
  for (const auto& Y : basis_B) adj_B.push_back(ch.adjoint_apply(embed(Y, full, d)));

  double worst = 0.0;
  for (size_t i = 0; i < basis_A.size(); ++i)
    for (size_t j = 0; j < basis_B.size(); ++j) {
      DenseOperator XY = tensor_product(basis_A[i], basis_B[j]);
      DenseOperator XYfull = embed(XY, full, d);
      DenseOperator lhs = ch.adjoint_apply(XYfull);
      Matrix rhs = adj_A[i].matrix() * adj_B[j].matrix();
      worst = std::max(worst, (lhs.matrix() - rhs).norm() / XYfull.fnorm());
    }
  return worst;
}

PredicateResult is_cpqc(const Channel& ch, double tol, RegionPolicy policy) {
  return sweep(ch, tol, policy, [](const Channel& c, const RegionPartition& p) {
    return cpqc_residual(c, p);
  });
}

PredicateResult is_cpqc_heisenberg(const Channel& ch, double tol,
                                   RegionPolicy policy) {
  return sweep(ch, tol, policy, [](const Channel& c, const RegionPartition& p) {
    return cpqc_heisenberg_residual(c, p);
  });
}

PredicateResult is_lpqc(const Channel& ch, double tol, RegionPolicy policy) {
  return sweep(ch, tol, policy, [](const Channel& c, const RegionPartition& p) {
    return lpqc_residual(c, p);
  });
}

PredicateResult is_fqc(const Channel& ch, double tol, RegionPolicy policy) {
  return sweep(ch, tol, policy, [](const Channel& c, const RegionPartition& p) {
    return fqc_residual(c, p);
  });
}

UnitaryCheck is_unitary(const Channel& ch, double tol) {
  UnitaryCheck out;
  auto top = ch.cjs_top_eigenvalues(2);
  const double tr = std::real(ch.cjs_trace());
  out.rank_ratio = top.size() > 1 ? top[1] / tr : 0.0;
  out.verdict = out.rank_ratio <= tol;
  if (out.verdict) {
    if (ch.unitary_matrix()) {
      out.unitary = *ch.unitary_matrix();
    } else {
      auto kraus = ch.kraus_matrices();
      if (!kraus.empty()) out.unitary = kraus.front();
    }
  }
  return out;
}

ClassificationReport taxonomy(const Channel& ch, double tol,
                              RegionPolicy policy) {
  ClassificationReport rep;
  rep.channel_id = ch.id();
  rep.lattice = ch.lattice().describe();
  rep.tolerance = tol;
  rep.region_policy = to_string(policy);

  for (const SiteSet& A : sweep_regions(ch.lattice(), policy)) {
    RegionPartition part = partition(ch.lattice(), A);
    RegionResiduals rr;
    rr.A = A;
    rr.cpqc = cpqc_residual(ch, part);
    rr.lpqc = lpqc_residual(ch, part);
    rr.fqc = fqc_residual(ch, part);
    rep.max_cpqc_residual = std::max(rep.max_cpqc_residual, rr.cpqc);
    rep.max_lpqc_residual = std::max(rep.max_lpqc_residual, rr.lpqc);
    rep.max_fqc_residual = std::max(rep.max_fqc_residual, rr.fqc);
    rep.per_region.push_back(std::move(rr));
  }
  rep.is_cpqc = rep.max_cpqc_residual <= tol;
  rep.is_lpqc = rep.max_lpqc_residual <= tol;
  rep.is_fqc = rep.max_fqc_residual <= tol;

  UnitaryCheck uc = is_unitary(ch, tol);
  rep.is_unitary = uc.verdict;
  rep.unitary_rank_ratio = uc.rank_ratio;
  rep.is_qca = rep.is_unitary && rep.is_cpqc;

  if (rep.is_lpqc && !rep.is_cpqc)
    throw TaxonomyInconsistency(
        "taxonomy: locality-preserving verdict without causality preservation");
  if (rep.is_fqc != rep.is_lpqc)
    throw TaxonomyInconsistency(
        "taxonomy: factorization and locality-preservation verdicts disagree");
  return rep;
}

}  // namespace qcatn
