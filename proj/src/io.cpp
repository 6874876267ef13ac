#include "qcatn/io.hpp"

#include <algorithm>
#include <sstream>

#include "qcatn/builtin_channels.hpp"
#include "qcatn/version.hpp"

namespace qcatn {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

Lattice parse_lattice(const std::string& spec) {
  const std::string t = trim(spec);
  if (!t.empty() && t.front() == '{') {
    json j = json::parse(t);
    return Lattice(j.at("d_L").get<int>(), j.at("M").get<int>(),
                   j.value("d", 2),
                   j.value("boundary", std::string("open")) == "periodic"
                       ? Boundary::periodic
                       : Boundary::open,
                   j.value("r", 1));
  }
  // Compact form: "1d,M=4,open,d=2,r=1" (order free after the dimension).
  int d_L = -1, M = -1, d = 2, r = 1;
  Boundary boundary = Boundary::open;
  std::stringstream ss(t);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    if (tok.size() >= 2 && (tok.back() == 'd' || tok.back() == 'D') &&
        std::isdigit(static_cast<unsigned char>(tok[0]))) {
      d_L = std::stoi(tok.substr(0, tok.size() - 1));
    } else if (tok.rfind("M=", 0) == 0) {
      M = std::stoi(tok.substr(2));
    } else if (tok.rfind("d=", 0) == 0) {
      d = std::stoi(tok.substr(2));
    } else if (tok.rfind("r=", 0) == 0) {
      r = std::stoi(tok.substr(2));
    } else if (tok == "open") {
      boundary = Boundary::open;
    } else if (tok == "periodic") {
      boundary = Boundary::periodic;
    } else {
      throw std::invalid_argument("lattice spec: unrecognized token '" + tok + "'");
    }
  }
  if (d_L < 1 || M < 2)
    throw std::invalid_argument("lattice spec: need dimension and M, e.g. 1d,M=4,open");
  return Lattice(d_L, M, d, boundary, r);
}

json lattice_to_json(const Lattice& lat) {
  return json{{"d_L", lat.spatial_dim()},
              {"M", lat.linear_size()},
              {"d", lat.local_dim()},
              {"boundary", lat.boundary() == Boundary::open ? "open" : "periodic"},
              {"r", lat.range()},
              {"N", lat.num_sites()}};
}

json site_set_to_json(const Lattice& lat, const SiteSet& A) {
  json arr = json::array();
  for (int n : A) arr.push_back(lat.site_coord(n));
  return arr;
}

json dense_operator_to_json(const DenseOperator& op) {
  json support = json::array();
  for (const auto& l : op.support())
    support.push_back(json{
        {"site", l.site},
        {"kind", l.kind == SiteKind::physical ? "physical" : "ancilla"}});
  json re = json::array(), im = json::array();
  for (long i = 0; i < op.dim(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (long j = 0; j < op.dim(); ++j) {
      rrow.push_back(op.matrix()(i, j).real());
      irow.push_back(op.matrix()(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"support", std::move(support)},
              {"dims", op.dims()},
              {"re", std::move(re)},
              {"im", std::move(im)}};
}

DenseOperator dense_operator_from_json(const json& j) {
  std::vector<SiteLabel> support;
  for (const auto& s : j.at("support"))
    support.push_back({s.at("site").get<int>(),
                       s.at("kind").get<std::string>() == "ancilla"
                           ? SiteKind::ancilla
                           : SiteKind::physical});
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  const long n = static_cast<long>(re.size());
  Matrix m(n, n);
  for (long i = 0; i < n; ++i)
    for (long k = 0; k < n; ++k)
      m(i, k) = cplx(re[i][k].get<double>(), im[i][k].get<double>());
  return DenseOperator(std::move(support), std::move(dims), std::move(m));
}

Channel parse_channel(const std::string& spec, const Lattice& lat,
                      std::uint64_t seed) {
  std::string builtin;
  json j;
  const std::string t = trim(spec);
  if (t.rfind("builtin:", 0) == 0) {
    builtin = t.substr(8);
  } else if (!t.empty() && t.front() == '{') {
    j = json::parse(t);
    if (j.contains("builtin")) builtin = j["builtin"].get<std::string>();
  } else {
    builtin = t;  // bare name
  }

  if (!builtin.empty()) {
    if (builtin == "identity") return Channel::identity(lat);
    if (builtin == "example1") return example1(lat);
    if (builtin == "example2") return example2(lat);
    if (builtin == "example3") return example3(lat);
    if (builtin == "shift") return shift_qca(lat);
    if (builtin == "random")
      return random_channel(lat, j.is_object() ? j.value("n_kraus", 3) : 3, seed);
    throw std::invalid_argument("channel spec: unknown builtin '" + builtin + "'");
  }
  if (j.contains("kraus")) {
    std::vector<DenseOperator> kraus;
    for (const auto& k : j["kraus"]) kraus.push_back(dense_operator_from_json(k));
    return Channel::from_kraus(lat, kraus);
  }
  if (j.contains("cjs")) {
    DenseOperator r = dense_operator_from_json(j["cjs"]);
    return Channel::from_cjs(lat, r.matrix());
  }
  throw std::invalid_argument(
      "channel spec: expected builtin:<name>, {\"kraus\":…} or {\"cjs\":…}");
}

json classification_report_to_json(const ClassificationReport& rep,
                                   const Lattice& lat) {
  json per_region = json::array();
  for (const auto& rr : rep.per_region)
    per_region.push_back(json{{"A", site_set_to_json(lat, rr.A)},
                              {"cpqc_residual", rr.cpqc},
                              {"lpqc_residual", rr.lpqc},
                              {"fqc_residual", rr.fqc}});
  return json{
      {"library_version", kVersion},
      {"channel_id", rep.channel_id},
      {"lattice", lattice_to_json(lat)},
      {"tolerance", rep.tolerance},
      {"region_policy", rep.region_policy},
      {"verdicts",
       json{{"is_cpqc", rep.is_cpqc},
            {"is_lpqc", rep.is_lpqc},
            {"is_fqc", rep.is_fqc},
            {"is_unitary", rep.is_unitary},
            {"is_qca", rep.is_qca}}},
      {"max_residuals",
       json{{"cpqc", rep.max_cpqc_residual},
            {"lpqc", rep.max_lpqc_residual},
            {"fqc", rep.max_fqc_residual},
            {"unitary_rank_ratio", rep.unitary_rank_ratio}}},
      {"per_region", std::move(per_region)}};
}

json area_law_report_to_json(const AreaLawReport& rep) {
  json per_region = json::array();
  for (const auto& e : rep.per_region) {
    json A = json::array();
    for (int n : e.A) A.push_back(n);
    per_region.push_back(json{{"M", e.M},
                              {"A", std::move(A)},
                              {"boundary", e.boundary},
                              {"value", e.value}});
  }
  json out{{"library_version", kVersion},
           {"channel_family", rep.channel_family},
           {"metric", rep.metric},
           {"sizes", rep.sizes},
           {"samples", rep.samples},
           {"seed", rep.seed},
           {"per_size_c", rep.per_size_c},
           {"fitted_c", rep.fitted_c},
           {"verdict", to_string(rep.verdict)},
           {"disclaimer", rep.disclaimer},
           {"per_region", std::move(per_region)}};
  if (rep.c_ref) out["c_ref"] = *rep.c_ref;
  return out;
}

std::string area_law_report_to_csv(const AreaLawReport& rep) {
  std::ostringstream os;
  os << "M,region_size,boundary,value\n";
  for (const auto& e : rep.per_region)
    os << e.M << "," << e.A.size() << "," << e.boundary << "," << e.value << "\n";
  return os.str();
}

json tno_to_json(const TensorNetworkOperator& tno) {
  json edges = json::array();
  for (size_t e = 0; e < tno.edges().size(); ++e)
    edges.push_back(json{{"sites", {tno.edges()[e].first, tno.edges()[e].second}},
                         {"bond_dim", tno.bond_dims()[e]}});
  json sites = json::array();
  for (int n = 0; n < tno.lattice().num_sites(); ++n) {
    const Tensor& t = tno.site_tensors()[n];
    json re = json::array(), im = json::array();
    for (const cplx& z : t.data()) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    sites.push_back(json{{"site", n},
                         {"dims", t.dims()},
                         {"incident_edges", tno.incident_edges(n)},
                         {"re", std::move(re)},
                         {"im", std::move(im)}});
  }
  return json{{"lattice", lattice_to_json(tno.lattice())},
              {"edges", std::move(edges)},
              {"max_bond_dim", tno.max_bond_dim()},
              {"site_tensors", std::move(sites)}};
}

json pepu_build_to_json(const PepuBuildResult& result) {
  return json{{"library_version", kVersion},
              {"seed", result.seed},
              {"retries", result.retries},
              {"bond_dimension", result.bond_dimension},
              {"cut_ranks", result.cut_ranks},
              {"reconstruction_residual", result.reconstruction_residual},
              {"network", tno_to_json(result.tno)}};
}

}  // namespace qcatn
