#pragma once

// Structured (JSON) reports for single couplings. Every number is rounded to
// 15 significant digits before it is stored, so a dumped report re-parses to
// exactly the same document.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include <json.hpp>

#include "coupling.hpp"
#include "krein_metric.hpp"
#include "resolvent_engine.hpp"
#include "spectral_classifier.hpp"

namespace zrp {

using json = nlohmann::ordered_json;

inline double round15(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr) + 0.0; // no negative zero
}

inline json to_json(cplx z) { return {{"re", round15(z.real())}, {"im", round15(z.imag())}}; }

inline cplx complex_from_json(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

inline json to_json(const CouplingMatrix& t) {
  return {{"a", to_json(t.a)}, {"b", to_json(t.b)}, {"c", to_json(t.c)}, {"d", to_json(t.d)}};
}

inline CouplingMatrix coupling_from_json(const json& j) {
  return {complex_from_json(j.at("a")), complex_from_json(j.at("b")), complex_from_json(j.at("c")),
          complex_from_json(j.at("d"))};
}

inline json metric_json(const CouplingMatrix& t, const MetricSpec& m) {
  json j{{"phi", round15(m.phi)}, {"phi_family", m.phi_family}};
  if (m.chi) {
    j["chi"] = round15(*m.chi);
    j["tanh_chi"] = round15(std::tanh(*m.chi));
    j["identity_residual"] = round15(metric_identity_residual(t, m.phi, *m.chi));
  } else {
    j["chi"] = nullptr;
  }
  return j;
}

inline json evidence_json(const SimilarityEvidence& ev) {
  json sups = json::array();
  for (const auto& [fn, s] : ev.sups)
    sups.push_back({{"function", std::string(to_string(fn))},
                    {"sup", std::isfinite(s.sup) ? json(round15(s.sup)) : json("inf")},
                    {"arg", to_json(s.arg)},
                    {"diverging", s.diverging}});
  json rows = json::array();
  if (ev.integral)
    for (const auto& r : ev.integral->rows)
      rows.push_back({{"eps", round15(r.eps)},
                      {"input", r.input},
                      {"value", round15(r.value)},
                      {"adjoint_value", round15(r.adjoint_value)},
                      {"radius", round15(r.radius)}});
  json j{{"bounded", ev.bounded}, {"sup_estimates", sups}, {"integral_criterion", rows}};
  if (ev.integral) j["spread"] = round15(ev.integral->spread());
  return j;
}

inline json verdict_json(const SimilarityVerdict& v) {
  json j{{"kind", std::string(to_string(v.kind))}, {"reason", v.reason}};
  if (v.evidence) j["evidence"] = evidence_json(*v.evidence);
  return j;
}

/// Classification part of the report: everything that depends only on T.
inline json classification_json(const CouplingMatrix& t) {
  const SpectralReport rep = classify(t);
  json j;
  j["coupling"] = to_json(t);
  j["symmetry"] = std::string(to_string(rep.symmetry));

  json roots = json::array();
  for (const auto& r : rep.roots.roots) roots.push_back({{"tau", to_json(r.tau)}, {"multiplicity", r.multiplicity}});
  j["roots"] = roots;

  json eig = json::array();
  for (const auto& e : rep.eigenvalues)
    eig.push_back({{"z", to_json(e.z)}, {"tau", to_json(e.tau)}, {"multiplicity", e.multiplicity}, {"defective", e.defective}});
  j["eigenvalues"] = eig;

  json sing = json::array();
  for (const auto& s : rep.singularities)
    sing.push_back({{"kind", std::string(to_string(s.kind))},
                    {"z", std::isfinite(s.z) ? json(round15(s.z)) : json("inf")}});
  j["singularities"] = sing;

  json eps = json::array();
  for (cplx z : rep.exceptional_points) eps.push_back(to_json(z));
  j["exceptional_points"] = eps;
  j["whole_plane"] = rep.spectrum_is_whole_plane;
  j["borderline"] = rep.borderline;

  if (is_pt_symmetric(t)) {
    const PtInvariants inv = pt_invariants(t);
    j["pt_cell"] = {{"cell", std::string(to_string(pt_cell(t)))},
                    {"D", round15(inv.D)},
                    {"K", round15(inv.K)},
                    {"sign_tie", pt_sign_tie(inv)}};
    j["metric"] = metric_json(t, krein_metric(t));
  } else {
    j["pt_cell"] = nullptr;
    j["metric"] = nullptr;
  }
  j["krein_representability"] = std::string(to_string(krein_representability(t)));
  return j;
}

inline json full_report(const CouplingMatrix& t, const VerdictOptions& opt = {}) {
  json j = classification_json(t);
  j["verdict"] = verdict_json(similarity_verdict(t, opt));
  return j;
}

} // namespace zrp
