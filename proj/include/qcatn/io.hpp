#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qcatn/classify.hpp"
#include "qcatn/dense_operator.hpp"
#include "qcatn/entanglement.hpp"
#include "qcatn/lattice.hpp"
#include "qcatn/tn.hpp"

namespace qcatn {

using json = nlohmann::ordered_json;

/// Lattice from either the compact form "1d,M=4,open[,d=2][,r=1]" or a JSON
/// object {"d_L":1,"M":4,"d":2,"boundary":"open","r":1}.
Lattice parse_lattice(const std::string& spec);
json lattice_to_json(const Lattice& lat);

json site_set_to_json(const Lattice& lat, const SiteSet& A);

/// Matrix interchange format:
/// {"support":[{"site":…,"kind":"physical"|"ancilla"}…],
///  "dims":[…], "re":[[…]], "im":[[…]]}, row-major.
json dense_operator_to_json(const DenseOperator& op);
DenseOperator dense_operator_from_json(const json& j);

/// Channel spec: {"builtin":"example1"|…, …} or {"kraus":[matrix…]} or
/// {"cjs": matrix}; the CLI shorthand "builtin:example1" maps to the first.
Channel parse_channel(const std::string& spec, const Lattice& lat,
                      std::uint64_t seed);

json classification_report_to_json(const ClassificationReport& rep,
                                   const Lattice& lat);
json area_law_report_to_json(const AreaLawReport& rep);
std::string area_law_report_to_csv(const AreaLawReport& rep);
json tno_to_json(const TensorNetworkOperator& tno);
json pepu_build_to_json(const PepuBuildResult& result);

}  // namespace qcatn
