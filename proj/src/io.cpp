#include "acs/io.hpp"

#include "acs/errors.hpp"

namespace acs {
namespace {

using nlohmann::json;

json pair(cplx c) { return json::array({c.real(), c.imag()}); }

cplx unpair(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("state JSON: complex must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

nlohmann::json state_to_json(const StateVector& psi, const AcsParams* params) {
  json doc;
  doc["repr"] = {{"k", psi.repr().k()}, {"flavor", std::string(to_string(psi.repr().flavor()))}};
  if (params) {
    doc["params"] = {{"z", pair(params->z)},
                     {"u", pair(params->u)},
                     {"v", pair(params->v)},
                     {"w", pair(params->w)}};
  } else {
    doc["params"] = nullptr;
  }
  json amps = json::array();
  for (const auto& c : psi.amplitudes()) amps.push_back(pair(c));
  doc["amplitudes"] = std::move(amps);
  doc["tail_norm"] = psi.tail_norm();
  return doc;
}

StateDocument state_from_json(const nlohmann::json& doc) {
  try {
    const auto& r = doc.at("repr");
    const ReprIndex repr =
        ReprIndex::make(parse_flavor(r.at("flavor").get<std::string>()), r.at("k").get<double>());
    std::vector<cplx> amps;
    for (const auto& a : doc.at("amplitudes")) amps.push_back(unpair(a));
    std::optional<AcsParams> params;
    if (doc.contains("params") && !doc["params"].is_null()) {
      const auto& p = doc["params"];
      params = AcsParams{unpair(p.at("z")), unpair(p.at("u")), unpair(p.at("v")),
                         unpair(p.at("w")), repr};
    }
    return StateDocument{params, StateVector(repr, std::move(amps))};
  } catch (const json::exception& e) {
    throw DomainError(std::string("state JSON: ") + e.what());
  }
}

nlohmann::json moments_to_json(const MomentReport& report) {
  json j;
  j["mean_K"] = {report.mean_K[0], report.mean_K[1], report.mean_K[2]};
  j["var_K1"] = report.var_K1;
  j["var_K2"] = report.var_K2;
  j["cov_K12"] = report.cov_K12;
  if (report.bosonic) {
    const auto& b = *report.bosonic;
    j["mean_n"] = b.mean_n;
    j["mean_a2"] = pair(b.mean_a2);
    j["mean_a4"] = pair(b.mean_a4);
    j["mean_n2kind"] = b.mean_n2kind;
    j["var_q"] = b.var_q;
    j["var_p"] = b.var_p;
    j["var_X"] = b.var_X;
    j["var_Y"] = b.var_Y;
    const auto flags = squeeze_flags(b);
    j["q_sq"] = flags.q_sq;
    j["p_sq"] = flags.p_sq;
    j["x_sq"] = flags.x_sq;
    j["y_sq"] = flags.y_sq;
  } else {
    for (const char* f : {"mean_n", "mean_a2", "mean_a4", "mean_n2kind", "var_q", "var_p", "var_X",
                          "var_Y", "q_sq", "p_sq", "x_sq", "y_sq"}) {
      j[f] = nullptr;
      j[std::string(f) + "_reason"] = "abstract representation has no photon realization";
    }
  }
  if (report.mandel_q) {
    j["mandel_q"] = *report.mandel_q;
  } else {
    j["mandel_q"] = nullptr;
    j["mandel_q_reason"] = report.mandel_q_reason;
  }
  j["schrodinger_lhs"] = report.schrodinger_lhs;
  j["schrodinger_rhs"] = report.schrodinger_rhs;
  return j;
}

}  // namespace acs
